#include "germlab/germ.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace germlab {

namespace {

constexpr double kOverflowLimit = 1e12;
constexpr double kInverseTol = 1e-10;
constexpr int kInverseMaxSteps = 50;

void check_finite(PlanePoint z, const char* what) {
    if (!is_finite(z)) throw SpecError(std::string(what) + " must be finite");
}

}  // namespace

// =============================================================================
// HomeoSpec
// =============================================================================

HomeoSpec make_radial_power(double alpha) {
    if (!(std::isfinite(alpha) && alpha > 0.0))
        throw SpecError("radial_power alpha must be positive");
    return RadialPower{alpha};
}

HomeoSpec make_log_spiral(double c) {
    if (!std::isfinite(c)) throw SpecError("log_spiral c must be finite");
    return LogSpiral{c};
}

HomeoSpec make_homeo_compose(HomeoSpec first, HomeoSpec second) {
    return HomeoCompose{std::make_shared<HomeoSpec>(std::move(first)),
                        std::make_shared<HomeoSpec>(std::move(second))};
}

PlanePoint homeo_apply(const HomeoSpec& h, PlanePoint z) {
    check_finite(z, "homeomorphism argument");
    if (z == PlanePoint{}) return z;
    return std::visit(
        [&](const auto& v) -> PlanePoint {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RadialPower>) {
                return std::pow(std::abs(z), v.alpha - 1.0) * z;
            } else if constexpr (std::is_same_v<T, LogSpiral>) {
                return z * std::polar(1.0, v.c * std::log(std::abs(z)));
            } else {
                return homeo_apply(*v.second, homeo_apply(*v.first, z));
            }
        },
        h);
}

PlanePoint homeo_apply_inverse(const HomeoSpec& h, PlanePoint w) {
    check_finite(w, "homeomorphism argument");
    if (w == PlanePoint{}) return w;
    return std::visit(
        [&](const auto& v) -> PlanePoint {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RadialPower>) {
                return std::pow(std::abs(w), 1.0 / v.alpha - 1.0) * w;
            } else if constexpr (std::is_same_v<T, LogSpiral>) {
                return w * std::polar(1.0, -v.c * std::log(std::abs(w)));
            } else {
                return homeo_apply_inverse(*v.first, homeo_apply_inverse(*v.second, w));
            }
        },
        h);
}

double homeo_modulus_exponent(const HomeoSpec& h) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RadialPower>) {
                return v.alpha;
            } else if constexpr (std::is_same_v<T, LogSpiral>) {
                return 1.0;
            } else {
                return homeo_modulus_exponent(*v.first) * homeo_modulus_exponent(*v.second);
            }
        },
        h);
}

// =============================================================================
// GermSpec factories
// =============================================================================

GermSpec make_contraction(PlanePoint lambda) {
    check_finite(lambda, "lambda");
    double m = std::abs(lambda);
    if (!(m > 0.0 && m < 1.0))
        throw SpecError("contraction requires 0 < |lambda| < 1");
    return LinearContraction{lambda};
}

GermSpec make_dilatation(PlanePoint lambda) {
    check_finite(lambda, "lambda");
    if (!(std::abs(lambda) > 1.0)) throw SpecError("dilatation requires |lambda| > 1");
    return LinearDilatation{lambda};
}

GermSpec make_rotation(double turns, std::optional<Rational> rational) {
    if (!std::isfinite(turns)) throw SpecError("rotation turns must be finite");
    if (rational) {
        if (rational->q <= 0) throw SpecError("rotation rational q must be positive");
        double expect = static_cast<double>(rational->p) / static_cast<double>(rational->q);
        if (std::fabs(turns - expect) > 1e-15)
            throw SpecError("rotation turns does not match declared rational p/q");
    }
    return RigidRotation{turns, rational};
}

GermSpec make_parabolic(int p, int q, int r) {
    if (q < 1 || r < 1) throw SpecError("parabolic requires q >= 1 and r >= 1");
    if (p == 0 && q != 1)
        throw SpecError("parabolic with p = 0 must use the canonical form q = 1");
    if (std::gcd(std::abs(p), q) != 1 && p != 0)
        throw SpecError("parabolic requires gcd(p, q) = 1");
    return ParabolicNormalForm{p, q, r};
}

GermSpec make_twist(double theta0, double kappa) {
    if (!std::isfinite(theta0) || !std::isfinite(kappa))
        throw SpecError("twist parameters must be finite");
    if (kappa == 0.0) throw SpecError("twist requires kappa != 0");
    return EllipticTwist{theta0, kappa};
}

GermSpec make_conjugated(HomeoSpec outer, GermSpec base) {
    Conjugated c{std::make_shared<HomeoSpec>(std::move(outer)),
                 std::make_shared<GermSpec>(std::move(base))};
    GermSpec spec{c};
    if (conjugation_depth(spec) > 4)
        throw SpecError("conjugation nesting deeper than 4 is not supported");
    return spec;
}

int conjugation_depth(const GermSpec& spec) {
    if (const auto* c = std::get_if<Conjugated>(&spec))
        return 1 + conjugation_depth(*c->base);
    return 0;
}

// =============================================================================
// Evaluation
// =============================================================================

PlanePoint evaluate(const GermSpec& spec, PlanePoint z) {
    check_finite(z, "evaluation point");
    PlanePoint out = std::visit(
        [&](const auto& v) -> PlanePoint {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearContraction> ||
                          std::is_same_v<T, LinearDilatation>) {
                return v.lambda * z;
            } else if constexpr (std::is_same_v<T, RigidRotation>) {
                return unit_phase(v.turns) * z;
            } else if constexpr (std::is_same_v<T, ParabolicNormalForm>) {
                if (z == PlanePoint{}) return z;
                PlanePoint zl = ipow(z, v.ell());
                PlanePoint val = z * (PlanePoint{1.0, 0.0} + zl);
                if (v.p != 0)
                    val *= unit_phase(static_cast<double>(v.p) / static_cast<double>(v.q));
                return val;
            } else if constexpr (std::is_same_v<T, EllipticTwist>) {
                if (z == PlanePoint{}) return z;
                return z * unit_phase(v.theta0 + v.kappa * std::norm(z));
            } else {
                if (z == PlanePoint{}) return z;
                PlanePoint y = homeo_apply_inverse(*v.outer, z);
                PlanePoint fy = evaluate(*v.base, y);
                return homeo_apply(*v.outer, fy);
            }
        },
        spec);
    if (!is_finite(out) || std::abs(out) > kOverflowLimit)
        throw OutOfRange("evaluation overflow: |f(z)| > 1e12");
    return out;
}

namespace {

// Newton inverse of the parabolic normal form on its injectivity disc. The
// disc bounds the preimage; w itself may lie slightly beyond it since
// |f(z)| <= |z|(1 + |z|^ell).
PlanePoint parabolic_inverse(const ParabolicNormalForm& f, PlanePoint w, double domain_radius) {
    if (std::abs(w) > domain_radius * (1.0 + domain_radius))
        throw OutOfDomain("parabolic inversion requested outside the injectivity disc");
    if (w == PlanePoint{}) return w;
    const int ell = f.ell();
    const PlanePoint omega =
        f.p == 0 ? PlanePoint{1.0, 0.0}
                 : unit_phase(static_cast<double>(f.p) / static_cast<double>(f.q));
    PlanePoint z = w / omega;
    for (int i = 0; i < kInverseMaxSteps; ++i) {
        PlanePoint zl = ipow(z, ell);
        PlanePoint val = omega * z * (PlanePoint{1.0, 0.0} + zl) - w;
        if (std::abs(val) < 0.25 * kInverseTol) break;
        PlanePoint deriv =
            omega * (PlanePoint{1.0, 0.0} + PlanePoint(static_cast<double>(ell + 1), 0.0) * zl);
        if (deriv == PlanePoint{}) throw NoConvergence("parabolic inversion hit a critical point");
        z -= val / deriv;
    }
    PlanePoint zl = ipow(z, ell);
    PlanePoint residual = omega * z * (PlanePoint{1.0, 0.0} + zl) - w;
    if (!(std::abs(residual) < kInverseTol))
        throw NoConvergence("parabolic inversion residual above 1e-10");
    if (std::abs(z) > domain_radius * (1.0 + 1e-9))
        throw OutOfDomain("parabolic preimage lies outside the injectivity disc");
    return z;
}

}  // namespace

PlanePoint evaluate_inverse(const GermSpec& spec, PlanePoint w, DiscRegion domain) {
    check_finite(w, "inversion point");
    return std::visit(
        [&](const auto& v) -> PlanePoint {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearContraction> ||
                          std::is_same_v<T, LinearDilatation>) {
                return w / v.lambda;
            } else if constexpr (std::is_same_v<T, RigidRotation>) {
                return w * unit_phase(-v.turns);
            } else if constexpr (std::is_same_v<T, ParabolicNormalForm>) {
                return parabolic_inverse(v, w, domain.radius);
            } else if constexpr (std::is_same_v<T, EllipticTwist>) {
                if (w == PlanePoint{}) return w;
                return w * unit_phase(-(v.theta0 + v.kappa * std::norm(w)));
            } else {
                if (w == PlanePoint{}) return w;
                PlanePoint y = homeo_apply_inverse(*v.outer, w);
                double a = homeo_modulus_exponent(*v.outer);
                DiscRegion base_domain(std::pow(domain.radius, 1.0 / a));
                PlanePoint x = evaluate_inverse(*v.base, y, base_domain);
                return homeo_apply(*v.outer, x);
            }
        },
        spec);
}

Multiplier derivative_at_origin(const GermSpec& spec) {
    return std::visit(
        [&](const auto& v) -> Multiplier {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearContraction> ||
                          std::is_same_v<T, LinearDilatation>) {
                return {v.lambda, false};
            } else if constexpr (std::is_same_v<T, RigidRotation>) {
                return {unit_phase(v.turns), false};
            } else if constexpr (std::is_same_v<T, ParabolicNormalForm>) {
                if (v.p == 0) return {PlanePoint{1.0, 0.0}, false};
                return {unit_phase(static_cast<double>(v.p) / static_cast<double>(v.q)), false};
            } else if constexpr (std::is_same_v<T, EllipticTwist>) {
                return {unit_phase(v.theta0), false};
            } else {
                Multiplier m = derivative_at_origin(*v.base);
                m.conjugated = true;
                return m;
            }
        },
        spec);
}

// =============================================================================
// Radial profile
// =============================================================================

double RadialProfile::base_radius(double r) const {
    return modulus_exponent == 1.0 ? r : std::pow(r, 1.0 / modulus_exponent);
}

PlanePoint RadialProfile::base_point(PlanePoint z) const {
    for (const HomeoSpec* h : conjugators) z = homeo_apply_inverse(*h, z);
    return z;
}

RadialProfile radial_profile(const GermSpec& spec) {
    RadialProfile prof;
    const GermSpec* cur = &spec;
    while (const auto* c = std::get_if<Conjugated>(cur)) {
        prof.conjugators.push_back(c->outer.get());
        cur = c->base.get();
    }
    prof.base = cur;
    prof.modulus_exponent = 1.0;
    for (const HomeoSpec* h : prof.conjugators)
        prof.modulus_exponent *= homeo_modulus_exponent(*h);

    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearContraction>) {
                prof.kind = RadialKind::Contracting;
                prof.linear_factor = std::abs(v.lambda);
            } else if constexpr (std::is_same_v<T, LinearDilatation>) {
                prof.kind = RadialKind::Expanding;
                prof.linear_factor = std::abs(v.lambda);
            } else if constexpr (std::is_same_v<T, RigidRotation> ||
                                 std::is_same_v<T, EllipticTwist>) {
                prof.kind = RadialKind::Preserving;
            } else if constexpr (std::is_same_v<T, ParabolicNormalForm>) {
                prof.kind = RadialKind::Parabolic;
                prof.ell = v.ell();
            } else {
                throw SpecError("unflattened conjugation");
            }
        },
        *cur);
    return prof;
}

// =============================================================================
// JSON
// =============================================================================

namespace {

using nlohmann::json;

json homeo_to_json_obj(const HomeoSpec& h) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RadialPower>) {
                return json{{"type", "radial_power"}, {"alpha", v.alpha}};
            } else if constexpr (std::is_same_v<T, LogSpiral>) {
                return json{{"type", "log_spiral"}, {"c", v.c}};
            } else {
                return json{{"type", "compose"},
                            {"first", homeo_to_json_obj(*v.first)},
                            {"second", homeo_to_json_obj(*v.second)}};
            }
        },
        h);
}

HomeoSpec homeo_from_json_obj(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw SpecError("homeomorphism JSON must be an object with a type field");
    std::string type = j.at("type").get<std::string>();
    if (type == "radial_power") return make_radial_power(j.at("alpha").get<double>());
    if (type == "log_spiral") return make_log_spiral(j.at("c").get<double>());
    if (type == "compose")
        return make_homeo_compose(homeo_from_json_obj(j.at("first")),
                                  homeo_from_json_obj(j.at("second")));
    throw SpecError("unknown homeomorphism type: " + type);
}

json germ_to_json_obj(const GermSpec& spec) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearContraction>) {
                return json{{"type", "contraction"},
                            {"lambda", {v.lambda.real(), v.lambda.imag()}}};
            } else if constexpr (std::is_same_v<T, LinearDilatation>) {
                return json{{"type", "dilatation"},
                            {"lambda", {v.lambda.real(), v.lambda.imag()}}};
            } else if constexpr (std::is_same_v<T, RigidRotation>) {
                json rational;
                if (v.rational) rational = json::array({v.rational->p, v.rational->q});
                return json{{"type", "rotation"}, {"turns", v.turns}, {"rational", rational}};
            } else if constexpr (std::is_same_v<T, ParabolicNormalForm>) {
                return json{{"type", "parabolic"}, {"p", v.p}, {"q", v.q}, {"r", v.r}};
            } else if constexpr (std::is_same_v<T, EllipticTwist>) {
                return json{{"type", "twist"}, {"theta0", v.theta0}, {"kappa", v.kappa}};
            } else {
                return json{{"type", "conjugated"},
                            {"outer", homeo_to_json_obj(*v.outer)},
                            {"base", germ_to_json_obj(*v.base)}};
            }
        },
        spec);
}

PlanePoint complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw SpecError(std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

GermSpec germ_from_json_obj(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw SpecError("germ JSON must be an object with a type field");
    std::string type = j.at("type").get<std::string>();
    if (type == "contraction")
        return make_contraction(complex_from_json(j.at("lambda"), "lambda"));
    if (type == "dilatation")
        return make_dilatation(complex_from_json(j.at("lambda"), "lambda"));
    if (type == "rotation") {
        std::optional<Rational> rational;
        if (j.contains("rational") && !j.at("rational").is_null()) {
            const auto& r = j.at("rational");
            if (!r.is_array() || r.size() != 2)
                throw SpecError("rotation rational must be [p, q] or null");
            rational = Rational{r[0].get<long>(), r[1].get<long>()};
        }
        return make_rotation(j.at("turns").get<double>(), rational);
    }
    if (type == "parabolic")
        return make_parabolic(j.at("p").get<int>(), j.at("q").get<int>(), j.at("r").get<int>());
    if (type == "twist")
        return make_twist(j.at("theta0").get<double>(), j.at("kappa").get<double>());
    if (type == "conjugated")
        return make_conjugated(homeo_from_json_obj(j.at("outer")),
                               germ_from_json_obj(j.at("base")));
    throw SpecError("unknown germ type: " + type);
}

}  // namespace

GermSpec parse_germ_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("germ JSON parse failure: ") + e.what());
    }
    return germ_from_json_obj(j);
}

std::string germ_to_json(const GermSpec& spec) { return germ_to_json_obj(spec).dump(); }

std::string germ_name(const GermSpec& spec) {
    std::ostringstream out;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearContraction>) {
                out << "contraction(" << v.lambda.real();
                if (v.lambda.imag() != 0.0) out << (v.lambda.imag() > 0 ? "+" : "") << v.lambda.imag() << "i";
                out << ")";
            } else if constexpr (std::is_same_v<T, LinearDilatation>) {
                out << "dilatation(" << v.lambda.real();
                if (v.lambda.imag() != 0.0) out << (v.lambda.imag() > 0 ? "+" : "") << v.lambda.imag() << "i";
                out << ")";
            } else if constexpr (std::is_same_v<T, RigidRotation>) {
                if (v.rational)
                    out << "rotation(" << v.rational->p << "/" << v.rational->q << ")";
                else
                    out << "rotation(" << v.turns << ", irrational)";
            } else if constexpr (std::is_same_v<T, ParabolicNormalForm>) {
                out << "parabolic(" << v.p << "," << v.q << "," << v.r << ")";
            } else if constexpr (std::is_same_v<T, EllipticTwist>) {
                out << "twist(" << v.theta0 << ", " << v.kappa << ")";
            } else {
                out << "conjugated[";
                std::visit(
                    [&](const auto& h) {
                        using H = std::decay_t<decltype(h)>;
                        if constexpr (std::is_same_v<H, RadialPower>)
                            out << "radial_power(" << h.alpha << ")";
                        else if constexpr (std::is_same_v<H, LogSpiral>)
                            out << "log_spiral(" << h.c << ")";
                        else
                            out << "compose";
                    },
                    *v.outer);
                out << "]" << germ_name(*v.base);
            }
        },
        spec);
    return out.str();
}

}  // namespace germlab
