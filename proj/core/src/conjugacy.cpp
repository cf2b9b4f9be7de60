#include "germlab/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "germlab/detail/parabolic.hpp"
#include "germlab/errors.hpp"
#include "json.hpp"

namespace germlab {

namespace {

double frac_centered(double turns) {
    double t = turns - std::floor(turns);
    return t > 0.5 ? t - 1.0 : t;
}

// Measured sup of |phi(f(z)) - target_factor * phi(z) - target_shift| over an
// n x n grid filtered to the domain.
double validate_relation(const ConjugacyMap& map, double extent, int n, double factor,
                         PlanePoint shift) {
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            PlanePoint z{-extent + 2.0 * extent * (a + 0.5) / n,
                         -extent + 2.0 * extent * (b + 0.5) / n};
            if (!map.in_domain(z)) continue;
            PlanePoint fz = map.forward(z);
            if (!map.in_domain(fz)) continue;
            PlanePoint defect = map.phi(fz) - factor * map.phi(z) - shift;
            worst = std::max(worst, std::abs(defect));
        }
    }
    if (!(worst < 1e-8))
        throw Error("conjugacy relation defect above tolerance on the validation grid");
    return worst;
}

}  // namespace

// =============================================================================
// contraction_conjugacy
// =============================================================================

ConjugacyMap contraction_conjugacy(const GermSpec& spec, DiscRegion D) {
    const double R = D.radius;
    const int M = 4096;

    // image of the boundary circle
    std::vector<PlanePoint> img(M);
    double max_mod = 0.0;
    for (int j = 0; j < M; ++j) {
        img[static_cast<std::size_t>(j)] =
            evaluate(spec, std::polar(R, kTau * j / M));
        max_mod = std::max(max_mod, std::abs(img[static_cast<std::size_t>(j)]));
    }
    if (!(max_mod < R * (1.0 - 1e-9)))
        throw NotContracting("f(boundary of D) is not strictly inside D");

    // sampled inward convergence of the disc orbit
    {
        PlanePoint probe = img[0];
        bool small = false;
        for (int n = 0; n < 2000 && !small; ++n) {
            probe = evaluate(spec, probe);
            small = std::abs(probe) < 1e-3 * R;
        }
        if (!small) throw NotContracting("orbit of D does not converge to 0");
    }

    // star-shapedness: the image angles must wind monotonically once
    std::vector<double> phi(M), rho(M);
    for (int j = 0; j < M; ++j) {
        phi[static_cast<std::size_t>(j)] = arg_turns(img[static_cast<std::size_t>(j)]);
        rho[static_cast<std::size_t>(j)] = std::abs(img[static_cast<std::size_t>(j)]);
    }
    double winding = 0.0;
    for (int j = 0; j < M; ++j) {
        double d = frac_centered(phi[static_cast<std::size_t>((j + 1) % M)] -
                                 phi[static_cast<std::size_t>(j)]);
        if (d < -1e-9) throw ParametrizationFold("image of the disc boundary is not star-shaped");
        winding += d;
    }
    if (std::fabs(winding - 1.0) > 1e-6)
        throw ParametrizationFold("image boundary does not wind exactly once");

    // circular lookup: source angle j/M and radius, keyed by image angle
    struct Knot {
        double angle;   // image angle (turns)
        double radius;  // image radius
        double source;  // source angle (turns, unwrapped against angle)
    };
    auto knots = std::make_shared<std::vector<Knot>>();
    knots->reserve(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j)
        knots->push_back({phi[static_cast<std::size_t>(j)], rho[static_cast<std::size_t>(j)],
                          static_cast<double>(j) / M});
    std::sort(knots->begin(), knots->end(),
              [](const Knot& a, const Knot& b) { return a.angle < b.angle; });

    auto lookup = [knots](double angle) -> std::pair<double, double> {
        const auto& ks = *knots;
        std::size_t n = ks.size();
        auto it = std::lower_bound(ks.begin(), ks.end(), angle,
                                   [](const Knot& k, double a) { return k.angle < a; });
        std::size_t hi = it == ks.end() ? 0 : static_cast<std::size_t>(it - ks.begin());
        std::size_t lo = (hi + n - 1) % n;
        double a0 = ks[lo].angle, a1 = ks[hi].angle;
        double span = a1 - a0;
        if (span <= 0.0) span += 1.0;
        double off = angle - a0;
        if (off < 0.0) off += 1.0;
        double t = span > 0.0 ? std::clamp(off / span, 0.0, 1.0) : 0.0;
        double radius = ks[lo].radius + t * (ks[hi].radius - ks[lo].radius);
        double src_step = ks[hi].source - ks[lo].source;
        src_step -= std::floor(src_step);  // forward gap in source angle
        double source = ks[lo].source + t * src_step;
        return {radius, source};
    };

    auto spec_copy = std::make_shared<GermSpec>(spec);

    auto phi_fn = [spec_copy, lookup, R, D](PlanePoint x) -> PlanePoint {
        if (std::abs(x) < 1e-300) return {0.0, 0.0};
        if (std::abs(x) > R * (1.0 + 1e-12))
            throw OutOfDomain("point outside the conjugacy domain D");
        PlanePoint y = x;
        int k = 0;
        for (;;) {
            auto [inner, source] = lookup(arg_turns(y));
            double mod = std::abs(y);
            if (mod >= inner || k > 4000) {
                double t = std::log(mod / inner) / std::log(R / inner);
                t = std::clamp(t, 0.0, 1.0);
                double here = arg_turns(y);
                double psi = source + t * (frac_centered(here - source));
                double radius = std::pow(2.0, t - 1.0);
                return std::pow(2.0, -k) * std::polar(radius, kTau * psi);
            }
            y = evaluate_inverse(*spec_copy, y, D);
            ++k;
        }
    };

    ConjugacyMap map;
    map.model = ConjugacyModel::Contraction;
    map.phi = phi_fn;
    map.forward = [spec_copy](PlanePoint z) { return evaluate(*spec_copy, z); };
    map.in_domain = [R](PlanePoint z) { return std::abs(z) <= R * (1.0 - 1e-9); };
    map.domain_description = "disc of radius " + std::to_string(R);
    map.verified_residual = validate_relation(map, R, 100, 0.5, PlanePoint{0.0, 0.0});
    return map;
}

// =============================================================================
// sector_conjugacy
// =============================================================================

ConjugacyMap sector_conjugacy(const PetalAtlas& atlas, const SectorModel& sector) {
    (void)atlas;
    auto sec = std::make_shared<SectorModel>(sector);

    auto phi_fn = [sec](PlanePoint z) -> PlanePoint {
        if (std::abs(z) < 1e-300) return {0.0, 0.0};
        SectorModel::Entry entry = sec->entry_data(z);
        if (!entry.member) throw OutOfDomain("point outside the sector");
        double a = (sec->gate_high - entry.gate_im) / (sec->gate_high - sec->gate_low);
        a = std::clamp(a, 0.0, 1.0);
        return std::pow(2.0, -entry.time) * std::polar(1.0, std::numbers::pi * a);
    };

    ConjugacyMap map;
    map.model = ConjugacyModel::HalfDisc;
    map.phi = phi_fn;
    map.forward = [sec](PlanePoint z) { return sec->step(z); };
    map.in_domain = [sec](PlanePoint z) { return sec->contains(z); };
    map.direction = sector.kind == PetalKind::Attracting ? +1 : -1;
    map.domain_description = std::string("nice ") +
                             (sector.kind == PetalKind::Attracting ? "attracting" : "repelling") +
                             " sector " + std::to_string(sector.index);
    map.verified_residual =
        validate_relation(map, sector.disc_radius, 100, 0.5, PlanePoint{0.0, 0.0});
    return map;
}

// =============================================================================
// translation_model_on_petal
// =============================================================================

ConjugacyMap translation_model_on_petal(const PetalAtlas& atlas, int petal_index) {
    if (petal_index < 0 || petal_index >= atlas.petal_count())
        throw SpecError("petal index out of range");
    auto petal = std::make_shared<PetalModel>(atlas.petals[static_cast<std::size_t>(petal_index)]);
    const int ell = atlas.ell;
    const double c = atlas.fatou_threshold;

    auto aligned_v = [petal, ell](PlanePoint u) {
        PlanePoint w = PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * u);
        return petal->kind == PetalKind::Attracting ? w : -w;
    };

    // F = w on the fundamental domain bounded by the gate curve {Re w = c}
    // and its image; a point is there exactly when its backward step crosses
    // the gate. Extension by F(f(z)) = F(z) + 1 is then float-exact.
    auto f_fn = [petal, ell, c, aligned_v](PlanePoint z) -> PlanePoint {
        if (!petal->contains(z)) throw OutOfDomain("point outside the petal");
        PlanePoint u = ipow(z, ell);
        PlanePoint v = aligned_v(u);
        std::int64_t k = 0;
        for (;;) {
            PlanePoint u_prev = petal->kind == PetalKind::Attracting
                                    ? detail::parabolic_unstep_u(u, ell)
                                    : detail::parabolic_step_u(u, ell);
            PlanePoint v_prev = aligned_v(u_prev);
            double drop = v.real() - v_prev.real();
            if (!(drop > 0.2 && drop < 2.0))
                throw BranchError("petal-aligned branch lost during extension");
            if (v_prev.real() < c) break;
            u = u_prev;
            v = v_prev;
            if (++k > (1 << 21)) throw BranchError("fundamental strip unreachable");
        }
        return v + PlanePoint{static_cast<double>(k), 0.0};
    };

    ConjugacyMap map;
    map.model = ConjugacyModel::Translation;
    map.phi = f_fn;
    map.forward = [petal, ell](PlanePoint z) {
        PlanePoint u = ipow(z, ell);
        PlanePoint u_next = petal->kind == PetalKind::Attracting
                                ? detail::parabolic_step_u(u, ell)
                                : detail::parabolic_unstep_u(u, ell);
        // reconstruct z from the root nearest the current direction
        double target = arg_turns(z);
        double mod = std::pow(std::abs(u_next), 1.0 / ell);
        double base = std::arg(u_next) / kTau;
        PlanePoint best{};
        double best_dist = 2.0;
        for (int m = 0; m < ell; ++m) {
            double angle = (base + m) / ell;
            double d = turn_distance(angle, target);
            if (d < best_dist) {
                best_dist = d;
                best = std::polar(mod, kTau * angle);
            }
        }
        return best;
    };
    map.in_domain = [petal](PlanePoint z) { return petal->contains(z); };
    map.direction = petal->kind == PetalKind::Attracting ? +1 : -1;
    map.domain_description =
        std::string(petal->kind == PetalKind::Attracting ? "attracting" : "repelling") +
        " petal " + std::to_string(petal_index);

    double reach = std::pow(1.0 / (ell * c), 1.0 / ell);
    map.verified_residual = validate_relation(map, reach, 100, 1.0, PlanePoint{1.0, 0.0});
    return map;
}

// =============================================================================
// exports
// =============================================================================

std::string conjugacy_sample_csv(const ConjugacyMap& map, double extent, int n) {
    std::ostringstream out;
    out.precision(17);
    out << "z_re,z_im,phi_re,phi_im\n";
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            PlanePoint z{-extent + 2.0 * extent * (a + 0.5) / n,
                         -extent + 2.0 * extent * (b + 0.5) / n};
            if (!map.in_domain(z)) continue;
            PlanePoint w = map.phi(z);
            out << z.real() << "," << z.imag() << "," << w.real() << "," << w.imag() << "\n";
        }
    }
    return out.str();
}

std::string conjugacy_metadata_json(const ConjugacyMap& map) {
    const char* model = map.model == ConjugacyModel::Contraction   ? "contraction"
                        : map.model == ConjugacyModel::HalfDisc    ? "half_disc"
                                                                   : "translation";
    nlohmann::json j{{"model", model},
                     {"residual", map.verified_residual},
                     {"domain", map.domain_description},
                     {"direction", map.direction}};
    return j.dump();
}

}  // namespace germlab
