#pragma once

#include <cmath>

#include "germlab/errors.hpp"
#include "germlab/plane.hpp"

namespace germlab {

/// Origin-centered open Euclidean disc. Serves as the neighbourhoods V, W
/// and the probe disc D of the set-level operations. Membership is strict:
/// |z| < radius; boundary points count as outside.
struct DiscRegion {
    double radius = 0.0;

    DiscRegion() = default;
    explicit DiscRegion(double r) : radius(r) {
        if (!(std::isfinite(r) && r > 0.0))
            throw SpecError("DiscRegion radius must be finite and positive");
    }

    bool contains(PlanePoint z) const { return std::abs(z) < radius; }
};

}  // namespace germlab
