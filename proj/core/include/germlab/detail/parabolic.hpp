#pragma once

#include "germlab/plane.hpp"

namespace germlab::detail {

/// One step of the power coordinate u = z^ell under the canonical parabolic
/// map: u -> u (1 + u)^ell. Exact for every normal form since omega^ell = 1.
PlanePoint parabolic_step_u(PlanePoint u, int ell);

/// Local-branch inverse of parabolic_step_u. Throws NoConvergence.
PlanePoint parabolic_unstep_u(PlanePoint u, int ell);

}  // namespace germlab::detail
