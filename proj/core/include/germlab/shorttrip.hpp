#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "germlab/disc.hpp"
#include "germlab/germ.hpp"

namespace germlab {

enum class Verdict { Holds, Fails, Inconclusive };

enum class GermClass { Contraction, Dilatation, ParabolicLike, NotShortTrip, Unknown };

struct Classification {
    GermClass kind = GermClass::Unknown;
    int ell_hat = 0;  // set for ParabolicLike
};

struct LevelReport {
    double w_radius = 0.0;
    std::int64_t n_hat = 0;
    bool censored = false;
    std::optional<PlanePoint> witness;  // present iff censored
    std::int64_t base_n_hat = 0;        // before refinement rounds
};

struct ShortTripReport {
    double v_radius = 0.0;
    std::vector<LevelReport> levels;  // strictly decreasing W_radius
    Verdict verdict = Verdict::Inconclusive;
    Classification classification;
    std::uint64_t seed = 0;
    std::int64_t cap = 0;
};

struct MeasureResult {
    std::int64_t n_hat = 0;
    bool censored = false;
    std::optional<PlanePoint> witness;
    std::int64_t base_n_hat = 0;
    std::vector<std::int64_t> round_values;  // running max after each round
};

/// Empirical N_W: low-discrepancy base sample in V \ W followed by three
/// refinement rounds of sample_count/4 points in shrinking balls around the
/// running argmax. A censored sample short-circuits the scan: its value
/// already dominates every uncensored one and is reported as a lower bound.
MeasureResult measure_N_W(const GermSpec& spec, DiscRegion V, DiscRegion W, int sample_count,
                          std::int64_t cap, std::uint64_t seed);

/// Runs measure_N_W at W radii radius(V) * 2^-k, k = 1..level_count.
/// Fails on any censored level; Holds when no level is censored and every
/// level's refinement changed the estimate by less than 10%.
ShortTripReport short_trip_verdict(const GermSpec& spec, DiscRegion V, int level_count,
                                   int sample_count, std::int64_t cap, std::uint64_t seed);

struct ClassifyConfig {
    double v_radius = 0.5;
    int levels = 6;
    int samples = 10000;
    std::int64_t cap = 100000;
    std::int64_t horizon = 10000;
    int resolution = 1024;
    int arc_samples = 2048;
    std::uint64_t seed = 42;
};

/// Full pipeline: verdict, then raster-based placement in the trichotomy.
/// Unknown is the fallback; no errors escape.
ShortTripReport classify_germ(const GermSpec& spec, const ClassifyConfig& config);

std::string verdict_name(Verdict v);
std::string class_name(const Classification& c);

/// {"V_radius":..., "levels":[{"W_radius":..., "N_hat":..., "censored":...,
///  "witness":[re,im]|null}], "verdict":..., "classification":...,
///  "ell_hat":..., "seed":..., "cap":...}
std::string report_to_json(const ShortTripReport& report);

/// Per-level CSV: W_radius, N_hat, censored.
std::string levels_to_csv(const ShortTripReport& report);

// =============================================================================
// Low-discrepancy sampling (additive recurrence, seed-offset)
// =============================================================================

class AnnulusSampler {
  public:
    /// Area-uniform low-discrepancy points in the annulus r_inner <= |z| < r_outer.
    AnnulusSampler(double r_inner, double r_outer, std::uint64_t seed);
    PlanePoint point(std::int64_t index) const;

  private:
    double r_inner2_, r_outer2_;
    double off_radius_, off_angle_;
};

}  // namespace germlab
