#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "germlab/disc.hpp"
#include "germlab/errors.hpp"
#include "germlab/plane.hpp"

namespace germlab {

// =============================================================================
// Conjugator catalog (the test homeomorphisms h with h(0) = 0)
// =============================================================================

struct RadialPower;
struct LogSpiral;
struct HomeoCompose;

/// Orientation-preserving plane homeomorphism fixing 0, used to conjugate
/// catalog germs. All variants act radially on moduli: |h(z)| depends on |z|
/// only, through t -> t^alpha for a composite exponent alpha.
using HomeoSpec = std::variant<RadialPower, LogSpiral, HomeoCompose>;

/// z -> |z|^{alpha-1} z, with 0 -> 0.
struct RadialPower {
    double alpha = 1.0;
};

/// z -> z e^{i c ln|z|}, with 0 -> 0. Modulus preserving.
struct LogSpiral {
    double c = 0.0;
};

/// second(first(z)).
struct HomeoCompose {
    std::shared_ptr<const HomeoSpec> first;
    std::shared_ptr<const HomeoSpec> second;
};

HomeoSpec make_radial_power(double alpha);
HomeoSpec make_log_spiral(double c);
HomeoSpec make_homeo_compose(HomeoSpec first, HomeoSpec second);

PlanePoint homeo_apply(const HomeoSpec& h, PlanePoint z);
PlanePoint homeo_apply_inverse(const HomeoSpec& h, PlanePoint w);

/// Composite modulus exponent: |h(z)| = |z|^a with a > 0.
double homeo_modulus_exponent(const HomeoSpec& h);

// =============================================================================
// Germ catalog
// =============================================================================

struct LinearContraction;
struct LinearDilatation;
struct RigidRotation;
struct ParabolicNormalForm;
struct EllipticTwist;
struct Conjugated;

/// Symbolic description of a planar germ fixing the origin. Immutable after
/// construction; evaluation is pure, so values are safe to share across
/// threads without synchronization.
using GermSpec = std::variant<LinearContraction, LinearDilatation, RigidRotation,
                              ParabolicNormalForm, EllipticTwist, Conjugated>;

/// z -> lambda z with 0 < |lambda| < 1.
struct LinearContraction {
    PlanePoint lambda;
};

/// z -> lambda z with |lambda| > 1.
struct LinearDilatation {
    PlanePoint lambda;
};

struct Rational {
    long p = 0;
    long q = 1;
};

/// z -> e^{2 pi i turns} z. `rational` records p/q when the angle is rational
/// (exactly turns == p/q is required), nullopt marks an irrational angle.
struct RigidRotation {
    double turns = 0.0;
    std::optional<Rational> rational;
};

/// z -> e^{2 pi i p/q} z (1 + z^{qr}); the normal form every holomorphic
/// parabolic germ is locally conjugate to. gcd(p, q) = 1; p = 0 forces q = 1.
struct ParabolicNormalForm {
    int p = 0;
    int q = 1;
    int r = 1;

    int ell() const { return q * r; }
};

/// z -> e^{i 2 pi (theta0 + kappa |z|^2)} z. Area preserving with invariant
/// circles; the canonical non-example for the short trip property.
struct EllipticTwist {
    double theta0 = 0.0;
    double kappa = 1.0;
};

/// h o f o h^{-1} for a catalog germ f and conjugator h.
struct Conjugated {
    std::shared_ptr<const HomeoSpec> outer;
    std::shared_ptr<const GermSpec> base;
};

// Validating factories. Throw SpecError on malformed parameters.
GermSpec make_contraction(PlanePoint lambda);
GermSpec make_dilatation(PlanePoint lambda);
GermSpec make_rotation(double turns, std::optional<Rational> rational);
GermSpec make_parabolic(int p, int q, int r);
GermSpec make_twist(double theta0, double kappa);
GermSpec make_conjugated(HomeoSpec outer, GermSpec base);

/// Depth of Conjugated nesting (0 for plain germs). Limited to 4.
int conjugation_depth(const GermSpec& spec);

// =============================================================================
// Evaluation
// =============================================================================

/// f(z) per the variant's closed form. Throws OutOfRange once |result| > 1e12.
PlanePoint evaluate(const GermSpec& spec, PlanePoint z);

/// Local inverse: z with |evaluate(spec, z) - w| < 1e-10. Closed form for
/// linear/rotation/twist variants; Newton refinement (initial guess
/// w / f'(0), at most 50 steps, forward-validated residual) for parabolic
/// forms, which are injective on |z| <= domain.radius.
PlanePoint evaluate_inverse(const GermSpec& spec, PlanePoint w,
                            DiscRegion domain = DiscRegion(0.5));

struct Multiplier {
    PlanePoint value;
    /// Set when the germ is wrapped in conjugators: the reported value is the
    /// base germ's multiplier (its rotation class is the conjugacy invariant,
    /// not the literal differential).
    bool conjugated = false;
};

/// The multiplier f'(0).
Multiplier derivative_at_origin(const GermSpec& spec);

// =============================================================================
// Radial structure (internal canonicalization used by the orbit engine)
// =============================================================================

enum class RadialKind {
    Contracting,   // |f(z)| = q|z| with q < 1
    Expanding,     // |f(z)| = q|z| with q > 1
    Preserving,    // |f(z)| = |z| exactly
    Parabolic,     // normal form z -> omega z (1 + z^ell)
};

/// View of a germ after stripping conjugators, valid because every catalog
/// conjugator acts on moduli as t -> t^a: orbits of the conjugated germ and
/// of its base correspond index-by-index with disc radii rescaled by t^{1/a}.
/// Pointers reference the analyzed spec, which must outlive the profile.
struct RadialProfile {
    RadialKind kind;
    const GermSpec* base = nullptr;
    std::vector<const HomeoSpec*> conjugators;  // outermost first, empty if none
    double modulus_exponent = 1.0;              // |h(z)| = |z|^a for the chain
    double linear_factor = 1.0;                 // |lambda| for linear kinds
    int ell = 0;                                // qr for parabolic kind

    /// Transport an outer-coordinates radius to base coordinates.
    double base_radius(double r) const;
    /// Transport an outer-coordinates point to base coordinates.
    PlanePoint base_point(PlanePoint z) const;
};

RadialProfile radial_profile(const GermSpec& spec);

// =============================================================================
// JSON wire format
// =============================================================================

/// Parse the canonical JSON description, e.g.
/// {"type":"parabolic","p":0,"q":1,"r":2} or
/// {"type":"conjugated","outer":{"type":"radial_power","alpha":2},"base":...}.
GermSpec parse_germ_json(const std::string& text);

/// Serialize back to the canonical JSON (round-trips with parse_germ_json).
std::string germ_to_json(const GermSpec& spec);

/// Compact human-readable name, used in tables and logs.
std::string germ_name(const GermSpec& spec);

}  // namespace germlab
