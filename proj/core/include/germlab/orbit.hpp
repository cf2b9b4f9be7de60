#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "germlab/disc.hpp"
#include "germlab/germ.hpp"

namespace germlab {

// =============================================================================
// Literal orbit runs
// =============================================================================

enum class OrbitExit {
    StaysInV,  // certified never to leave V (only from certificate-backed paths)
    LeavesV,   // left V at exit_step
    HitCap,    // cap steps computed, still inside V
};

struct OrbitSegment {
    PlanePoint start;
    std::int64_t length = 0;  // number of steps computed
    OrbitExit exit = OrbitExit::HitCap;
    std::int64_t exit_step = -1;       // for LeavesV: first n with |z_n| >= radius(V)
    std::vector<PlanePoint> points;    // z_0 .. z_length

    PlanePoint at(std::int64_t n) const { return points.at(static_cast<std::size_t>(n)); }
};

/// Iterates f from x until the orbit leaves V or cap steps are reached,
/// recording every visited point. Deterministic.
OrbitSegment forward_run(const GermSpec& spec, PlanePoint x, DiscRegion V, std::int64_t cap);

// =============================================================================
// Admissible segments (endpoints outside W, orbit inside V)
// =============================================================================

struct AdmissibleSegment {
    std::int64_t value = 0;  // (last index with |z| >= rW) - (first such index)
    bool censored = false;   // the run hit the cap with the last qualifying index
                             // final and no analytic certificate available
    std::int64_t first_q = -1;
    std::int64_t last_q = -1;
};

/// Longest admissible sub-segment of the maximal run of x inside V.
///
/// Literal iteration is bounded by `cap`. For germs whose radial behaviour is
/// certifiable (linear, rotation, twist, parabolic normal forms, and their
/// radially conjugated variants) the qualifying window is completed
/// analytically when the orbit enters the certified regime, so the reported
/// value is the true finite answer even when it exceeds cap; `censored` then
/// stays false. Orbits with no such certificate (e.g. rotations, which stay
/// on an invariant circle) report the cap-truncated window with
/// censored = true, a lower bound.
AdmissibleSegment longest_admissible_segment(const GermSpec& spec, PlanePoint x, DiscRegion V,
                                             DiscRegion W, std::int64_t cap);

// =============================================================================
// Stay-in-disc classification (backend for set estimation)
// =============================================================================

/// Classifier bound to (spec, V, horizon, direction). classify() answers
/// whether the first `horizon` iterates of z under f (direction +1) or f^{-1}
/// (direction -1) all stay inside V. Pure and safe to call concurrently.
class StayClassifier {
  public:
    enum class Result {
        Leaves,        // orbit exits V within horizon steps
        Survives,      // still inside V after horizon steps (no certificate)
        StaysForever,  // certified to remain in V for all time
        Undetermined,  // backward step failed to converge
    };

    StayClassifier(GermSpec spec, DiscRegion V, std::int64_t horizon, int direction);

    Result classify(PlanePoint z) const;

    /// Convenience: InSet-style membership (Survives or StaysForever).
    bool stays(PlanePoint z) const {
        Result r = classify(z);
        return r == Result::Survives || r == Result::StaysForever;
    }

  private:
    GermSpec spec_;  // owned: profile_ points into it
    RadialProfile profile_;
    double r_v_;
    std::int64_t horizon_;
    int direction_;
};

}  // namespace germlab
