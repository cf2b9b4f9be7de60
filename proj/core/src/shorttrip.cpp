#include "germlab/shorttrip.hpp"

#include <algorithm>
#include <cmath>

#include "germlab/components.hpp"
#include "germlab/errors.hpp"
#include "germlab/orbit.hpp"
#include "germlab/parallel.hpp"
#include "germlab/raster.hpp"
#include "json.hpp"

namespace germlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// plastic-constant additive recurrence (R2 sequence)
constexpr double kAlpha1 = 0.7548776662466927;
constexpr double kAlpha2 = 0.5698402909980532;

double frac(double x) { return x - std::floor(x); }

}  // namespace

AnnulusSampler::AnnulusSampler(double r_inner, double r_outer, std::uint64_t seed)
    : r_inner2_(r_inner * r_inner), r_outer2_(r_outer * r_outer) {
    off_radius_ = unit_double(splitmix64(seed));
    off_angle_ = unit_double(splitmix64(seed ^ 0xd1b54a32d192ed03ull));
}

PlanePoint AnnulusSampler::point(std::int64_t index) const {
    double t = frac(off_radius_ + kAlpha1 * static_cast<double>(index));
    double s = frac(off_angle_ + kAlpha2 * static_cast<double>(index));
    double radius = std::sqrt(r_inner2_ + t * (r_outer2_ - r_inner2_));
    return std::polar(radius, kTau * s);
}

// =============================================================================
// measure_N_W
// =============================================================================

namespace {

struct ScanState {
    bool have = false;
    std::int64_t best = 0;
    PlanePoint argmax{};
    bool censored = false;
    PlanePoint witness{};
};

// Scans points in deterministic order; stops at the first censored sample
// (its value dominates every uncensored one and is a lower bound anyway).
void scan_points(const GermSpec& spec, DiscRegion V, DiscRegion W, std::int64_t cap,
                 const std::vector<PlanePoint>& points, ScanState& state) {
    const std::size_t n = points.size();
    std::vector<AdmissibleSegment> results(n);
    parallel_for(n, [&](std::size_t i) {
        results[i] = longest_admissible_segment(spec, points[i], V, W, cap);
    });
    for (std::size_t i = 0; i < n; ++i) {
        const AdmissibleSegment& seg = results[i];
        if (!state.have || seg.value > state.best) {
            state.have = true;
            state.best = seg.value;
            state.argmax = points[i];
        }
        if (seg.censored) {
            state.best = std::max(state.best, seg.value);
            state.argmax = points[i];
            state.censored = true;
            state.witness = points[i];
            return;
        }
    }
}

}  // namespace

MeasureResult measure_N_W(const GermSpec& spec, DiscRegion V, DiscRegion W, int sample_count,
                          std::int64_t cap, std::uint64_t seed) {
    if (!(W.radius < V.radius)) throw BadRegions("W must be strictly inside V");
    if (sample_count < 1) throw SpecError("sample_count must be >= 1");

    AnnulusSampler base(W.radius, V.radius, seed);
    std::vector<PlanePoint> points;
    points.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) points.push_back(base.point(i));

    ScanState state;
    scan_points(spec, V, W, cap, points, state);

    MeasureResult out;
    out.base_n_hat = state.best;
    out.round_values.push_back(state.best);

    // refinement rounds localize the supremum around the running argmax
    for (int round = 0; round < 3 && !state.censored; ++round) {
        double ball = V.radius / (8.0 * std::pow(4.0, round));
        AnnulusSampler ball_sampler(0.0, ball, splitmix64(seed + 17 * (round + 1)));
        std::vector<PlanePoint> refine;
        int want = std::max(1, sample_count / 4);
        std::int64_t idx = 0;
        while (static_cast<int>(refine.size()) < want && idx < 16LL * want) {
            PlanePoint z = state.argmax + ball_sampler.point(idx++);
            double mod = std::abs(z);
            if (mod >= W.radius && mod < V.radius) refine.push_back(z);
        }
        scan_points(spec, V, W, cap, refine, state);
        out.round_values.push_back(state.best);
    }

    out.n_hat = state.best;
    out.censored = state.censored;
    if (state.censored) out.witness = state.witness;
    return out;
}

// =============================================================================
// verdict
// =============================================================================

ShortTripReport short_trip_verdict(const GermSpec& spec, DiscRegion V, int level_count,
                                   int sample_count, std::int64_t cap, std::uint64_t seed) {
    if (level_count < 3) throw SpecError("level_count must be >= 3");

    ShortTripReport report;
    report.v_radius = V.radius;
    report.seed = seed;
    report.cap = cap;

    bool any_censored = false;
    bool all_stable = true;
    for (int k = 1; k <= level_count; ++k) {
        DiscRegion W(V.radius * std::pow(2.0, -k));
        MeasureResult m =
            measure_N_W(spec, V, W, sample_count, cap, splitmix64(seed) + static_cast<std::uint64_t>(k));
        LevelReport level;
        level.w_radius = W.radius;
        level.n_hat = m.n_hat;
        level.censored = m.censored;
        level.witness = m.witness;
        level.base_n_hat = m.base_n_hat;
        report.levels.push_back(level);
        if (m.censored) any_censored = true;
        // stability: the final refinement round moved the estimate < 10%
        if (m.round_values.size() >= 2) {
            std::int64_t prev = m.round_values[m.round_values.size() - 2];
            double denom = static_cast<double>(std::max<std::int64_t>(prev, 1));
            if (static_cast<double>(m.n_hat - prev) / denom >= 0.10) all_stable = false;
        }
    }
    report.verdict = any_censored ? Verdict::Fails
                                  : (all_stable ? Verdict::Holds : Verdict::Inconclusive);
    return report;
}

// =============================================================================
// classify
// =============================================================================

ShortTripReport classify_germ(const GermSpec& spec, const ClassifyConfig& config) {
    DiscRegion V(config.v_radius);
    ShortTripReport report =
        short_trip_verdict(spec, V, config.levels, config.samples, config.cap, config.seed);

    if (report.verdict == Verdict::Fails) {
        report.classification = {GermClass::NotShortTrip, 0};
        return report;
    }

    GridRaster stable = estimate_stable_set(spec, V, config.horizon, config.resolution);
    GridRaster unstable = estimate_unstable_set(spec, V, config.horizon, config.resolution);

    DiscRegion probe(0.2 * V.radius);
    double s_cov = raster_coverage(stable, probe);
    double u_cov = raster_coverage(unstable, probe);

    // A contraction has an essentially full stable probe disc and an
    // essentially trivial unstable one; parabolic germs fill both.
    if (s_cov >= 0.99 && u_cov < 0.5) {
        report.classification = {GermClass::Contraction, 0};
        return report;
    }
    if (u_cov >= 0.99 && s_cov < 0.5) {
        report.classification = {GermClass::Dilatation, 0};
        return report;
    }

    // Petal structure: boundary alternation count plus component count.
    // Larger probe circles resolve slow (high-ell) flowers at this horizon.
    for (double fraction : {0.3, 0.4, 0.5, 0.6}) {
        DiscRegion D(fraction * V.radius);
        int arcs = 0;
        try {
            arcs = boundary_arc_decomposition(spec, D, V, config.horizon, config.arc_samples);
        } catch (const NeitherDetected&) {
            continue;
        } catch (const Error&) {
            continue;
        }
        if (arcs <= 0 || arcs % 2 != 0) continue;
        int ell_hat = arcs / 2;
        try {
            ComponentLabeling comps = component_analysis(stable, unstable);
            if (comps.origin_touching_count() == arcs) {
                report.classification = {GermClass::ParabolicLike, ell_hat};
                return report;
            }
        } catch (const Error&) {
            continue;
        }
    }
    report.classification = {GermClass::Unknown, 0};
    return report;
}

// =============================================================================
// serialization
// =============================================================================

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "inconclusive";
    }
}

std::string class_name(const Classification& c) {
    switch (c.kind) {
        case GermClass::Contraction: return "contraction";
        case GermClass::Dilatation: return "dilatation";
        case GermClass::ParabolicLike:
            return "parabolic_like(" + std::to_string(c.ell_hat) + ")";
        case GermClass::NotShortTrip: return "not_short_trip";
        default: return "unknown";
    }
}

std::string report_to_json(const ShortTripReport& report) {
    nlohmann::json levels = nlohmann::json::array();
    for (const LevelReport& level : report.levels) {
        nlohmann::json witness;
        if (level.witness)
            witness = nlohmann::json::array({level.witness->real(), level.witness->imag()});
        levels.push_back({{"W_radius", level.w_radius},
                          {"N_hat", level.n_hat},
                          {"censored", level.censored},
                          {"witness", witness}});
    }
    const char* cls = nullptr;
    switch (report.classification.kind) {
        case GermClass::Contraction: cls = "contraction"; break;
        case GermClass::Dilatation: cls = "dilatation"; break;
        case GermClass::ParabolicLike: cls = "parabolic_like"; break;
        case GermClass::NotShortTrip: cls = "not_short_trip"; break;
        default: cls = "unknown"; break;
    }
    nlohmann::json j{{"V_radius", report.v_radius},
                     {"levels", levels},
                     {"verdict", verdict_name(report.verdict)},
                     {"classification", cls},
                     {"ell_hat", report.classification.ell_hat},
                     {"seed", report.seed},
                     {"cap", report.cap}};
    return j.dump(2);
}

std::string levels_to_csv(const ShortTripReport& report) {
    std::string out = "W_radius,N_hat,censored\n";
    for (const LevelReport& level : report.levels) {
        out += std::to_string(level.w_radius) + "," + std::to_string(level.n_hat) + "," +
               (level.censored ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace germlab
