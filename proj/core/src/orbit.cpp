#include "germlab/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "germlab/detail/parabolic.hpp"
#include "germlab/errors.hpp"

namespace germlab {

namespace detail {

PlanePoint parabolic_step_u(PlanePoint u, int ell) {
    return u * ipow(PlanePoint{1.0, 0.0} + u, ell);
}

PlanePoint parabolic_unstep_u(PlanePoint u, int ell) {
    PlanePoint s = u - static_cast<double>(ell) * u * u;  // first-order inverse seed
    for (int i = 0; i < 40; ++i) {
        PlanePoint one_plus = PlanePoint{1.0, 0.0} + s;
        PlanePoint val = s * ipow(one_plus, ell) - u;
        double scale = std::max(std::abs(u), 1e-30);
        if (std::abs(val) < 1e-14 * scale) return s;
        PlanePoint deriv =
            ipow(one_plus, ell - 1) *
            (PlanePoint{1.0, 0.0} + PlanePoint(static_cast<double>(ell + 1), 0.0) * s);
        if (deriv == PlanePoint{}) break;
        s -= val / deriv;
    }
    PlanePoint one_plus = PlanePoint{1.0, 0.0} + s;
    if (std::abs(s * ipow(one_plus, ell) - u) < 1e-10 * std::max(std::abs(u), 1e-30)) return s;
    throw NoConvergence("parabolic backward step did not converge");
}

}  // namespace detail

namespace {

using detail::parabolic_step_u;
using detail::parabolic_unstep_u;

// ----------------------------------------------------------------------------
// Parabolic u-plane machinery.
//
// For the normal form f(z) = omega z (1 + z^ell) with omega^ell = 1, the
// power u = z^ell obeys the autonomous recursion u' = u (1 + u)^ell, and all
// modulus questions reduce to it: |z_n| = |u_n|^{1/ell}. In the coordinate
// w = -1/(ell u) the step is w' = w + 1 + b/w + O(w^-2), b = (ell+1)/(2 ell),
// so far from the origin the orbit is a near-unit translation and long
// stretches can be advanced in closed form with a logarithmic drift
// correction. Crossing-time errors from the O(w^-2) tail are a bounded number
// of steps over arbitrarily long spans, negligible against the crossing
// counts of order |w| where the jumps are used.
// ----------------------------------------------------------------------------

constexpr double kZoneFloor = 1024.0;   // |w| above which jumps are allowed
constexpr double kAbsorbReal = 4.0;     // Re w >= 4 inside V: forward absorbed
constexpr double kIndexClamp = 4.0e15;  // int64-safe bound on analytic indices

struct SurveyRequest {
    const RadialProfile* profile = nullptr;
    PlanePoint x;                       // outer coordinates
    double r_v = 0.0;                   // outer coordinates
    std::optional<double> r_w;          // outer coordinates
    std::int64_t cap = 0;               // literal-step budget
    std::optional<std::int64_t> horizon;  // answer stay queries at this depth
    int direction = +1;
};

struct SurveyResult {
    enum class Outcome { LeftV, StaysForever, Budget, HorizonSurvived, Undetermined };
    Outcome outcome = Outcome::Budget;
    std::int64_t exit_step = -1;  // for LeftV
    std::int64_t first_q = -1;
    std::int64_t last_q = -1;
    bool last_q_final = false;  // for Budget: lastQ was the final computed index
    bool clamped = false;       // analytic window hit the int64 safety clamp

    void qualify(std::int64_t n) {
        if (first_q < 0) first_q = n;
        if (n > last_q) last_q = n;
    }
    void qualify_window(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) return;
        if (first_q < 0) first_q = lo;
        if (hi > last_q) last_q = hi;
    }
};

// Closed-form survey for exactly modulus-preserving germs.
SurveyResult survey_preserving(const SurveyRequest& req, double base_mod, double base_rv,
                               double base_rw_or_neg) {
    SurveyResult res;
    if (base_mod >= base_rv) {
        res.outcome = SurveyResult::Outcome::LeftV;
        res.exit_step = 0;
        return res;
    }
    if (req.horizon) {
        res.outcome = SurveyResult::Outcome::StaysForever;
    } else {
        // Orbit never leaves V and never sheds its modulus: the literal run is
        // truncated at cap with every index qualifying (or none).
        res.outcome = SurveyResult::Outcome::Budget;
        if (base_rw_or_neg >= 0.0 && base_mod >= base_rw_or_neg) {
            res.qualify_window(0, req.cap);
            res.last_q_final = true;
        }
    }
    return res;
}

// Survey for |f(z)| = factor |z| germs (factor != 1), in base coordinates.
SurveyResult survey_linear(const SurveyRequest& req, double base_mod, double factor,
                           double base_rv, double base_rw_or_neg) {
    SurveyResult res;
    const double lf = std::log(factor);
    auto steps_to_reach = [&](double target) -> double {
        // smallest real t with base_mod * factor^t crossing target
        return std::log(target / base_mod) / lf;
    };

    if (base_mod >= base_rv) {
        res.outcome = SurveyResult::Outcome::LeftV;
        res.exit_step = 0;
        return res;
    }
    if (base_mod == 0.0) {
        res.outcome = SurveyResult::Outcome::StaysForever;
        return res;
    }

    auto modulus_at = [&](std::int64_t n) {
        return base_mod * std::pow(factor, static_cast<double>(n));
    };

    if (factor > 1.0) {
        double t_exit = std::min(steps_to_reach(base_rv), kIndexClamp);  // > 0
        std::int64_t exit_step = static_cast<std::int64_t>(std::ceil(t_exit));
        // settle the integer crossing against rounding of the log
        for (int g = 0; g < 4 && exit_step > 1 && modulus_at(exit_step - 1) >= base_rv; ++g)
            --exit_step;
        for (int g = 0; g < 4 && modulus_at(exit_step) < base_rv; ++g) ++exit_step;
        if (req.horizon && exit_step > *req.horizon) {
            res.outcome = SurveyResult::Outcome::HorizonSurvived;
            return res;
        }
        res.outcome = SurveyResult::Outcome::LeftV;
        res.exit_step = exit_step;
        if (base_rw_or_neg >= 0.0) {
            std::int64_t lo = 0;
            if (base_mod < base_rw_or_neg) {
                double t_w = std::min(steps_to_reach(base_rw_or_neg), kIndexClamp);
                lo = static_cast<std::int64_t>(std::ceil(t_w));
                for (int g = 0; g < 4 && lo > 0 && modulus_at(lo - 1) >= base_rw_or_neg; ++g) --lo;
                for (int g = 0; g < 4 && modulus_at(lo) < base_rw_or_neg; ++g) ++lo;
            }
            res.qualify_window(lo, exit_step - 1);
        }
        return res;
    }

    // Contracting: orbit stays in V forever; moduli strictly decrease.
    res.outcome = SurveyResult::Outcome::StaysForever;
    if (req.horizon) return res;
    if (base_rw_or_neg >= 0.0 && base_mod >= base_rw_or_neg) {
        double t_w = std::min(steps_to_reach(base_rw_or_neg), kIndexClamp);
        std::int64_t last = static_cast<std::int64_t>(std::floor(t_w));
        for (int g = 0; g < 4 && modulus_at(last) < base_rw_or_neg; ++g) --last;
        for (int g = 0; g < 4 && modulus_at(last + 1) >= base_rw_or_neg; ++g) ++last;
        if (last < 0) last = 0;
        res.qualify_window(0, last);
        if (t_w >= kIndexClamp) res.clamped = true;
    }
    return res;
}

struct WPath {
    PlanePoint v0;  // direction-normalized coordinate, drift ~ +1
    double beta;    // drift correction constant

    PlanePoint at(double t) const {
        PlanePoint base = v0 + PlanePoint{t, 0.0};
        return base + beta * std::log(base / v0);
    }
    // First t >= 0 with |path| crossing `radius` while moving toward it;
    // `outward` false finds the entry into |v| <= radius, true the exit.
    // Returns negative when no crossing exists.
    double crossing(double radius, bool outward) const {
        double re = v0.real(), im = v0.imag();
        double disc = radius * radius - im * im;
        if (disc < 0.0) return -1.0;
        double s = std::sqrt(disc);
        double t = outward ? -re + s : -re - s;
        if (t < 0.0) return t;
        if (t > kIndexClamp) return kIndexClamp;
        // refine against the drift-corrected path
        for (int i = 0; i < 3; ++i) {
            PlanePoint v = at(t);
            double g = std::norm(v) - radius * radius;
            PlanePoint dv = PlanePoint{1.0, 0.0} + beta / (v0 + PlanePoint{t, 0.0});
            double dg = 2.0 * (v.real() * dv.real() + v.imag() * dv.imag());
            if (dg == 0.0) break;
            double step = g / dg;
            if (!std::isfinite(step)) break;
            t -= step;
            if (t < 0.0) t = 0.0;
            if (t > kIndexClamp) return kIndexClamp;
        }
        return t;
    }
};

// Full hybrid survey for parabolic normal forms (u-plane literal stepping
// plus translation jumps in the far field).
SurveyResult survey_parabolic(const SurveyRequest& req, PlanePoint base_x, int ell,
                              double base_rv, double base_rw_or_neg) {
    SurveyResult res;
    const int dir = req.direction;
    const double m_v = std::pow(base_rv, ell);
    const double m_w = base_rw_or_neg >= 0.0 ? std::pow(base_rw_or_neg, ell) : -1.0;
    const double r_v_w = 1.0 / (ell * m_v);                       // |w| <= R_V  <=> outside V
    const double r_w_w = m_w > 0.0 ? 1.0 / (ell * m_w) : -1.0;    // |w| <= R_W  <=> outside W
    // Jumps engage once literal stepping has carried the orbit this far out.
    // Tight caps lower the threshold so certified conclusions stay reachable
    // within the literal budget (at reduced crossing-count accuracy).
    const double zone =
        std::max(2.0 * r_v_w,
                 std::min(kZoneFloor, std::max(8.0, static_cast<double>(req.cap) / 4.0)));
    const double beta = dir * (ell + 1) / (2.0 * ell);

    PlanePoint u = ipow(base_x, ell);
    std::int64_t n = 0;             // orbit index (jumps included)
    std::int64_t literal_steps = 0; // spent against req.cap

    auto v_of = [&](PlanePoint uu) -> PlanePoint {
        PlanePoint w = PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * uu);
        return dir > 0 ? w : -w;
    };
    auto u_of = [&](PlanePoint v) -> PlanePoint {
        PlanePoint w = dir > 0 ? v : -v;
        return PlanePoint{-1.0, 0.0} / (static_cast<double>(ell) * w);
    };

    for (int phase = 0; phase < 16; ++phase) {
        // ---- literal phase ----
        for (;;) {
            double mod = std::abs(u);
            if (mod >= m_v) {
                res.outcome = SurveyResult::Outcome::LeftV;
                res.exit_step = n;
                return res;
            }
            if (m_w >= 0.0 && mod >= m_w) res.qualify(n);
            if (req.horizon && n >= *req.horizon) {
                res.outcome = SurveyResult::Outcome::HorizonSurvived;
                return res;
            }
            if (mod < 1e-280) {
                // Numerically at the fixed point: below every probe radius.
                res.outcome = SurveyResult::Outcome::StaysForever;
                return res;
            }
            PlanePoint v = v_of(u);
            // Absorption certificate: with Re v >= 4 the drift keeps Re v
            // growing and |u| non-increasing, so the orbit never leaves V.
            // Usable immediately when no W window is being tracked.
            if (m_w < 0.0 && v.real() >= kAbsorbReal) {
                res.outcome = SurveyResult::Outcome::StaysForever;
                return res;
            }
            if (std::abs(v) >= zone) break;  // jump zone reached
            if (literal_steps >= req.cap) {
                res.outcome = SurveyResult::Outcome::Budget;
                res.last_q_final = (res.last_q == n);
                return res;
            }
            u = dir > 0 ? parabolic_step_u(u, ell) : parabolic_unstep_u(u, ell);
            ++n;
            ++literal_steps;
        }

        // ---- jump phase ----
        WPath path{v_of(u), beta};
        const double re = path.v0.real(), im = path.v0.imag();
        const bool dips_out = re < 0.0 && std::fabs(im) < zone;

        double t_end;  // span covered by this jump
        bool absorbed;
        if (dips_out) {
            t_end = path.crossing(zone, /*outward=*/false);
            if (t_end < 1.0) t_end = 1.0;
            absorbed = false;
        } else {
            t_end = kIndexClamp;
            absorbed = true;
        }

        if (m_w >= 0.0 && r_w_w >= zone) {
            double t1 = path.crossing(r_w_w, /*outward=*/false);
            double t2 = path.crossing(r_w_w, /*outward=*/true);
            double lo = std::max(0.0, t1);
            double hi = std::min(t2, t_end);
            if (std::abs(path.v0) <= r_w_w) lo = 0.0;  // already outside W
            if (t2 >= 0.0 && hi >= lo) {
                if (hi >= kIndexClamp) res.clamped = true;
                res.qualify_window(n + static_cast<std::int64_t>(std::ceil(lo)),
                                   n + static_cast<std::int64_t>(std::floor(hi)));
            }
        }

        if (absorbed) {
            // Path escapes to Re v -> +infinity staying inside V: certified.
            res.outcome = SurveyResult::Outcome::StaysForever;
            return res;
        }

        // Advance just past the far-field span so literal stepping resumes
        // strictly inside the zone (the skipped fringe indices can shift the
        // qualifying window by at most two steps).
        std::int64_t k = static_cast<std::int64_t>(std::ceil(t_end)) + 1;
        if (k < 1) k = 1;
        if (req.horizon && n + k > *req.horizon) {
            // The jump span stays at |v| >= zone - 2 > R_V, hence inside V.
            res.outcome = SurveyResult::Outcome::HorizonSurvived;
            return res;
        }
        u = u_of(path.at(static_cast<double>(k)));
        n += k;
    }
    throw Error("parabolic survey failed to settle (phase limit)");
}

SurveyResult run_survey(const SurveyRequest& req) {
    const RadialProfile& prof = *req.profile;
    PlanePoint base_x = prof.base_point(req.x);
    double base_rv = prof.base_radius(req.r_v);
    double base_rw = req.r_w ? prof.base_radius(*req.r_w) : -1.0;
    double base_mod = std::abs(base_x);

    switch (prof.kind) {
        case RadialKind::Preserving:
            return survey_preserving(req, base_mod, base_rv, base_rw);
        case RadialKind::Contracting:
        case RadialKind::Expanding: {
            int dir_factor = req.direction > 0 ? 1 : -1;
            double factor = prof.linear_factor;
            if (dir_factor < 0) factor = 1.0 / factor;
            if (factor == 1.0) return survey_preserving(req, base_mod, base_rv, base_rw);
            return survey_linear(req, base_mod, factor, base_rv, base_rw);
        }
        case RadialKind::Parabolic:
            return survey_parabolic(req, base_x, prof.ell, base_rv, base_rw);
    }
    throw Error("unreachable radial kind");
}

}  // namespace

// =============================================================================
// forward_run
// =============================================================================

OrbitSegment forward_run(const GermSpec& spec, PlanePoint x, DiscRegion V, std::int64_t cap) {
    if (cap < 1) throw SpecError("forward_run requires cap >= 1");
    if (!V.contains(x)) throw StartOutsideV("forward_run start lies outside V");

    OrbitSegment seg;
    seg.start = x;
    seg.points.reserve(static_cast<std::size_t>(std::min<std::int64_t>(cap + 1, 1 << 20)));
    seg.points.push_back(x);

    PlanePoint z = x;
    for (std::int64_t n = 1; n <= cap; ++n) {
        z = evaluate(spec, z);
        seg.points.push_back(z);
        if (!V.contains(z)) {
            seg.exit = OrbitExit::LeavesV;
            seg.exit_step = n;
            seg.length = n;
            return seg;
        }
        if (z == PlanePoint{}) {
            // landed exactly on the fixed point: the rest of the orbit is 0
            seg.exit = OrbitExit::StaysInV;
            seg.length = n;
            return seg;
        }
    }
    seg.exit = OrbitExit::HitCap;
    seg.length = cap;
    return seg;
}

// =============================================================================
// longest_admissible_segment
// =============================================================================

AdmissibleSegment longest_admissible_segment(const GermSpec& spec, PlanePoint x, DiscRegion V,
                                             DiscRegion W, std::int64_t cap) {
    if (!(W.radius < V.radius)) throw BadRegions("W must be strictly inside V");
    if (cap < 1) throw SpecError("cap must be >= 1");
    if (!V.contains(x)) throw StartOutsideV("start lies outside V");

    RadialProfile prof = radial_profile(spec);
    SurveyRequest req;
    req.profile = &prof;
    req.x = x;
    req.r_v = V.radius;
    req.r_w = W.radius;
    req.cap = cap;
    req.direction = +1;

    SurveyResult sr = run_survey(req);

    AdmissibleSegment out;
    out.first_q = sr.first_q;
    out.last_q = sr.last_q;
    if (sr.first_q >= 0 && sr.last_q > sr.first_q) out.value = sr.last_q - sr.first_q;
    out.censored = (sr.outcome == SurveyResult::Outcome::Budget && sr.last_q_final) || sr.clamped;
    return out;
}

// =============================================================================
// StayClassifier
// =============================================================================

StayClassifier::StayClassifier(GermSpec spec, DiscRegion V, std::int64_t horizon, int direction)
    : spec_(std::move(spec)),
      profile_(radial_profile(spec_)),
      r_v_(V.radius),
      horizon_(horizon),
      direction_(direction) {
    if (horizon < 1) throw SpecError("horizon must be >= 1");
    if (direction != 1 && direction != -1) throw SpecError("direction must be +1 or -1");
}

StayClassifier::Result StayClassifier::classify(PlanePoint z) const {
    if (std::abs(z) >= r_v_) return Result::Leaves;
    SurveyRequest req;
    req.profile = &profile_;
    req.x = z;
    req.r_v = r_v_;
    req.cap = horizon_;
    req.horizon = horizon_;
    req.direction = direction_;
    try {
        SurveyResult sr = run_survey(req);
        switch (sr.outcome) {
            case SurveyResult::Outcome::LeftV:
                return sr.exit_step <= horizon_ ? Result::Leaves : Result::Survives;
            case SurveyResult::Outcome::StaysForever:
                return Result::StaysForever;
            case SurveyResult::Outcome::HorizonSurvived:
            case SurveyResult::Outcome::Budget:
                return Result::Survives;
            case SurveyResult::Outcome::Undetermined:
                return Result::Undetermined;
        }
    } catch (const NoConvergence&) {
        return Result::Undetermined;
    }
    return Result::Undetermined;
}

}  // namespace germlab
