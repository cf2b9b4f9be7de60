#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace germlab {

/// A point of the dynamical plane, identified with the complex plane.
using PlanePoint = std::complex<double>;

constexpr double kTau = 2.0 * std::numbers::pi;

inline bool is_finite(PlanePoint z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// e^{2*pi*i*turns}; angles are kept in turns throughout so that rational
/// rotations stay exactly rational.
inline PlanePoint unit_phase(double turns) {
    return std::polar(1.0, kTau * turns);
}

/// Argument of z in turns, in [0, 1).
inline double arg_turns(PlanePoint z) {
    double t = std::arg(z) / kTau;
    if (t < 0.0) t += 1.0;
    return t;
}

/// Circular distance between two angles in turns, in [0, 1/2].
inline double turn_distance(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return d > 0.5 ? 1.0 - d : d;
}

/// z^n for small non-negative integer n by repeated squaring.
inline PlanePoint ipow(PlanePoint z, int n) {
    PlanePoint acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

}  // namespace germlab
