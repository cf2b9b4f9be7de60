#include "germlab/flower.hpp"

#include <algorithm>
#include <cmath>

#include "germlab/detail/parabolic.hpp"
#include "germlab/errors.hpp"
#include "json.hpp"

namespace germlab {

namespace {

constexpr int kMaxEll = 12;

void check_ell(int ell) {
    if (ell < 1 || ell > kMaxEll) throw SpecError("ell must be in [1, 12]");
}

// The ell-th roots of u, as z candidates; picks the one whose argument (in
// turns) lies closest to `target_turns`.
PlanePoint root_near_angle(PlanePoint u, int ell, double target_turns) {
    double mod = std::pow(std::abs(u), 1.0 / ell);
    double base = std::arg(u) / kTau;  // turns
    PlanePoint best{};
    double best_dist = 2.0;
    for (int m = 0; m < ell; ++m) {
        double angle = (base + m) / ell;
        double d = turn_distance(angle, target_turns);
        if (d < best_dist) {
            best_dist = d;
            best = std::polar(mod, kTau * angle);
        }
    }
    return best;
}

PlanePoint canonical_step_z(PlanePoint z, int ell) {
    return z * (PlanePoint{1.0, 0.0} + ipow(z, ell));
}

PlanePoint canonical_unstep_z(PlanePoint z, int ell) {
    // invert through the power coordinate, then take the nearby root
    PlanePoint u = ipow(z, ell);
    PlanePoint u_prev = detail::parabolic_unstep_u(u, ell);
    return root_near_angle(u_prev, ell, arg_turns(z));
}

}  // namespace

PlanePoint fatou_coordinate(PlanePoint z, int ell) {
    check_ell(ell);
    if (std::abs(z) < 1e-300) throw OriginSingularity("fatou_coordinate at the fixed point");
    return PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * ipow(z, ell));
}

std::vector<double> attracting_directions(int ell) {
    check_ell(ell);
    std::vector<double> out(static_cast<std::size_t>(ell));
    for (int k = 0; k < ell; ++k) out[static_cast<std::size_t>(k)] = (2.0 * k + 1.0) / (2.0 * ell);
    return out;
}

std::vector<double> repelling_directions(int ell) {
    check_ell(ell);
    std::vector<double> out(static_cast<std::size_t>(ell));
    for (int k = 0; k < ell; ++k) out[static_cast<std::size_t>(k)] = static_cast<double>(k) / ell;
    return out;
}

// =============================================================================
// PetalModel
// =============================================================================

bool PetalModel::contains(PlanePoint z) const {
    double mod = std::abs(z);
    if (mod < 1e-300) return false;
    if (turn_distance(arg_turns(z), axis_turns) > 1.0 / (2.0 * ell) + 1e-12) return false;
    PlanePoint w = PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * ipow(z, ell));
    return kind == PetalKind::Attracting ? w.real() > fatou_threshold
                                         : w.real() < -fatou_threshold;
}

PlanePoint PetalModel::aligned_fatou(PlanePoint z) const {
    PlanePoint w = fatou_coordinate(z, ell);
    return kind == PetalKind::Attracting ? w : -w;
}

// =============================================================================
// Atlas
// =============================================================================

PetalAtlas build_petal_atlas(int p, int q, int r, double fatou_threshold, double disc_radius) {
    GermSpec check = make_parabolic(p, q, r);  // validates p/q/r
    (void)check;
    int ell = q * r;
    check_ell(ell);
    if (!(fatou_threshold >= 2.0)) throw SpecError("fatou_threshold must be >= 2");
    if (!(disc_radius > 0.0 && disc_radius <= 0.5))
        throw SpecError("disc_radius must lie in (0, 0.5]");

    PetalAtlas atlas;
    atlas.p = p;
    atlas.q = q;
    atlas.r = r;
    atlas.ell = ell;
    atlas.fatou_threshold = fatou_threshold;
    atlas.disc_radius = disc_radius;
    atlas.petals.reserve(static_cast<std::size_t>(2 * ell));
    for (int j = 0; j < 2 * ell; ++j) {
        PetalModel petal;
        petal.kind = (j % 2 == 1) ? PetalKind::Attracting : PetalKind::Repelling;
        petal.axis_turns = static_cast<double>(j) / (2.0 * ell);
        petal.fatou_threshold = fatou_threshold;
        petal.orientation = petal.kind == PetalKind::Attracting ? PetalOrientation::Direct
                                                                : PetalOrientation::Indirect;
        petal.ell = ell;
        atlas.petals.push_back(petal);
    }

    // forward-invariance sample under the canonical map (f^q up to higher order)
    const int per_petal = std::max(1, 10000 / (2 * ell));
    for (const PetalModel& petal : atlas.petals) {
        int checked = 0;
        int grid = static_cast<int>(std::sqrt(per_petal)) + 1;
        for (int a = 0; a < grid && checked < per_petal; ++a) {
            for (int b = 0; b < grid && checked < per_petal; ++b) {
                double re = fatou_threshold * (1.02 + 0.5 * a);
                double im = (b - grid / 2.0) * 0.4 * re;
                PlanePoint w{re, im};
                if (petal.kind == PetalKind::Repelling) w = -w;
                PlanePoint u = PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * w);
                PlanePoint z = root_near_angle(u, ell, petal.axis_turns);
                if (std::abs(z) >= 0.95 * atlas.disc_radius) continue;
                if (!petal.contains(z)) continue;
                ++checked;
                PlanePoint next = petal.kind == PetalKind::Attracting
                                      ? canonical_step_z(z, ell)
                                      : canonical_unstep_z(z, ell);
                if (!petal.contains(next))
                    throw ThresholdTooSmall("petal not forward invariant at this threshold");
            }
        }
    }
    return atlas;
}

// =============================================================================
// Permutation
// =============================================================================

PetalPermutation petal_permutation(int p, int q, int r, const PetalAtlas& atlas) {
    if (atlas.p != p || atlas.q != q || atlas.r != r)
        throw SpecError("atlas was built from different (p, q, r)");
    const int n = atlas.petal_count();
    const int ell = atlas.ell;
    GermSpec germ = make_parabolic(p, q, r);

    PetalPermutation perm;
    perm.map.resize(static_cast<std::size_t>(n));
    double rho = 0.25 * std::pow(1.0 / (ell * atlas.fatou_threshold), 1.0 / ell);
    int shift = -1;
    for (int i = 0; i < n; ++i) {
        PlanePoint z = std::polar(rho, kTau * atlas.petals[static_cast<std::size_t>(i)].axis_turns);
        PlanePoint fz = evaluate(germ, z);
        double angle = arg_turns(fz);
        int best = 0;
        double best_dist = 2.0;
        for (int j = 0; j < n; ++j) {
            double d = turn_distance(angle, atlas.petals[static_cast<std::size_t>(j)].axis_turns);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        perm.map[static_cast<std::size_t>(i)] = best;
        int s = ((best - i) % n + n) % n;
        if (shift < 0)
            shift = s;
        else if (shift != s)
            throw NotAShift("petal permutation is not a uniform index shift");
    }
    perm.shift = shift;
    if (perm.shift % 2 != 0) throw NotAShift("petal shift must be even");

    perm.order = perm.shift == 0 ? 1 : n / std::gcd(perm.shift, n);
    if (q % perm.order != 0) throw NotAShift("petal shift order must divide q");
    perm.cycle_count = n / perm.order;
    int half = perm.shift / 2;
    perm.attracting_cycle_count = half == 0 ? ell : std::gcd(half, ell);
    return perm;
}

// =============================================================================
// Sectors
// =============================================================================

SectorModel::Entry SectorModel::entry_data(PlanePoint z) const {
    Entry entry;
    double mod = std::abs(z);
    if (mod < 1e-300 || mod > disc_radius) return entry;

    // angular gap between the two bounding axes selects the leaf
    double rel = arg_turns(z) - angle_lo;
    rel -= std::floor(rel);
    if (!(rel > 0.0 && rel < 1.0 / (2.0 * ell))) return entry;

    auto v_of = [&](PlanePoint uu) {
        PlanePoint w = PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * uu);
        return leaf_sign > 0 ? w : -w;
    };

    PlanePoint u = ipow(z, ell);
    PlanePoint v = v_of(u);
    if (v.imag() <= 0.0) return entry;
    if (v.real() < gate_real) return entry;

    PlanePoint v_prev = v;
    std::int64_t k = 0;
    const std::int64_t march_cap = 1 << 21;
    // channel points never exceed the gate scale; a march escaping the disc
    // belongs to an orbit that never crossed the gate
    const double escape_u = std::pow(disc_radius, ell) * (1.0 + 1e-9);
    try {
        while (v.real() >= gate_real) {
            if (++k > march_cap) return entry;
            u = kind == PetalKind::Attracting ? detail::parabolic_unstep_u(u, ell)
                                              : detail::parabolic_step_u(u, ell);
            if (!is_finite(u) || std::abs(u) > escape_u) return entry;
            v_prev = v;
            v = v_of(u);
        }
    } catch (const NoConvergence&) {
        return entry;
    }
    double denom = v_prev.real() - v.real();
    if (!(denom > 0.0)) return entry;
    double delta = (gate_real - v.real()) / denom;  // in [0, 1)
    entry.time = static_cast<double>(k) - delta;
    entry.gate_im = v.imag() + delta * (v_prev.imag() - v.imag());
    entry.member = entry.gate_im >= gate_low && entry.gate_im <= gate_high && entry.time >= 0.0;
    return entry;
}

PlanePoint SectorModel::step(PlanePoint z) const {
    return kind == PetalKind::Attracting ? canonical_step_z(z, ell)
                                         : canonical_unstep_z(z, ell);
}

SectorModel build_nice_sector(const PetalAtlas& atlas, int i) {
    const int n = atlas.petal_count();
    if (i < 0 || i >= n) throw SpecError("sector index out of range");
    const int ell = atlas.ell;
    const double c = atlas.fatou_threshold;

    SectorModel sector;
    sector.ell = ell;
    sector.index = i;
    sector.kind = (i % 2 == 0) ? PetalKind::Attracting : PetalKind::Repelling;
    sector.leaf_sign = (i % 2 == 0) ? 1.0 : -1.0;
    sector.gate_real = -c;
    sector.angle_lo = atlas.petals[static_cast<std::size_t>(i)].axis_turns;
    sector.angle_hi = atlas.petals[static_cast<std::size_t>((i + 1) % n)].axis_turns;
    sector.disc_radius = atlas.disc_radius;

    double h = std::max(2.0 * c + 2.0,
                        1.5 / (ell * std::pow(0.85 * atlas.disc_radius, ell)));

    for (int attempt = 0; attempt < 8; ++attempt) {
        sector.gate_low = h;
        sector.gate_high = 4.0 * h;

        bool ok = true;
        double target_angle = sector.angle_lo + 1.0 / (4.0 * ell);
        const int grid = 100;  // 10^4 sample points
        for (int a = 0; a < grid && ok; ++a) {
            for (int b = 0; b < grid && ok; ++b) {
                double im = sector.gate_low +
                            (sector.gate_high - sector.gate_low) * (a + 0.5) / grid;
                double t_frac = 3.0 * (b + 0.5) / grid;
                PlanePoint v{sector.gate_real + (t_frac - std::floor(t_frac)), im};
                PlanePoint w = sector.leaf_sign > 0 ? v : -v;
                PlanePoint u = PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * w);
                PlanePoint z = root_near_angle(u, ell, target_angle);
                for (int s = 0; s < static_cast<int>(std::floor(t_frac)); ++s)
                    z = sector.step(z);
                if (std::abs(z) > atlas.disc_radius) {
                    ok = false;
                    break;
                }
                if (!sector.contains(z)) continue;  // off the sampled chart edge
                if (!sector.contains(sector.step(z))) ok = false;
            }
        }
        if (ok) return sector;
        h *= 2.0;
    }
    throw InvarianceFailure("nice sector invariance failed after 8 shrink steps");
}

// =============================================================================
// JSON export
// =============================================================================

std::string atlas_to_json(const PetalAtlas& atlas) {
    nlohmann::json petals = nlohmann::json::array();
    for (const PetalModel& petal : atlas.petals) {
        petals.push_back(
            {{"kind", petal.kind == PetalKind::Attracting ? "attracting" : "repelling"},
             {"axis_turns", petal.axis_turns},
             {"threshold", petal.fatou_threshold},
             {"orientation",
              petal.orientation == PetalOrientation::Direct ? "direct" : "indirect"}});
    }
    nlohmann::json j{{"ell", atlas.ell}, {"petals", petals}};
    return j.dump();
}

}  // namespace germlab
