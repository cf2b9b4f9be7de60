#include <cmath>
#include <random>

#include "doctest.h"
#include "germlab/catalog.hpp"
#include "germlab/errors.hpp"
#include "germlab/germ.hpp"

using namespace germlab;

namespace {

double dist(PlanePoint a, PlanePoint b) { return std::abs(a - b); }

// signed area of the image of a small positively oriented triangle at z
template <typename F>
double image_triangle_area(F&& f, PlanePoint z, double side) {
    PlanePoint a = f(z);
    PlanePoint b = f(z + PlanePoint{side, 0.0});
    PlanePoint c = f(z + PlanePoint{0.0, side});
    PlanePoint u = b - a, v = c - a;
    return 0.5 * (u.real() * v.imag() - u.imag() * v.real());
}

}  // namespace

TEST_CASE("evaluate matches the closed forms") {
    GermSpec para = make_parabolic(0, 1, 1);
    CHECK(dist(evaluate(para, {-0.5, 0.0}), {-0.25, 0.0}) < 1e-15);

    GermSpec con = make_contraction({0.5, 0.0});
    CHECK(dist(evaluate(con, {0.8, 0.0}), {0.4, 0.0}) < 1e-15);

    for (const CatalogEntry& entry : builtin_catalog())
        CHECK(evaluate(entry.spec, {0.0, 0.0}) == PlanePoint{0.0, 0.0});
}

TEST_CASE("evaluate_inverse matches the forward map") {
    GermSpec con = make_contraction({0.5, 0.0});
    CHECK(dist(evaluate_inverse(con, {0.25, 0.0}), {0.5, 0.0}) < 1e-15);

    // forward-map oracle: f(-0.25) = -0.1875 for z -> z(1+z)
    GermSpec para = make_parabolic(0, 1, 1);
    CHECK(dist(evaluate(para, {-0.25, 0.0}), {-0.1875, 0.0}) < 1e-15);
    PlanePoint z = evaluate_inverse(para, {-0.1875, 0.0});
    CHECK(dist(z, {-0.25, 0.0}) < 1e-9);
    CHECK(dist(evaluate(para, z), {-0.1875, 0.0}) < 1e-10);

    for (const CatalogEntry& entry : builtin_catalog())
        CHECK(evaluate_inverse(entry.spec, {0.0, 0.0}) == PlanePoint{0.0, 0.0});
}

TEST_CASE("derivative_at_origin per variant") {
    Multiplier m = derivative_at_origin(make_parabolic(1, 3, 2));
    CHECK(dist(m.value, unit_phase(1.0 / 3.0)) < 1e-15);
    CHECK_FALSE(m.conjugated);

    CHECK(dist(derivative_at_origin(make_contraction({0.5, 0.0})).value, {0.5, 0.0}) < 1e-15);

    const double golden = 0.6180339887498949;
    CHECK(dist(derivative_at_origin(make_rotation(golden, std::nullopt)).value,
               unit_phase(golden)) < 1e-15);

    Multiplier mc = derivative_at_origin(
        make_conjugated(make_radial_power(2.0), make_contraction({0.5, 0.0})));
    CHECK(mc.conjugated);
    CHECK(dist(mc.value, {0.5, 0.0}) < 1e-15);
}

TEST_CASE("fixed point is exact for random parameter draws") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        GermSpec specs[] = {
            make_contraction(std::polar(unit(rng), kTau * angle(rng))),
            make_dilatation(std::polar(1.0 + 3.0 * unit(rng), kTau * angle(rng))),
            make_rotation(angle(rng), std::nullopt),
            make_parabolic(0, 1, 1 + static_cast<int>(angle(rng) * 5)),
            make_twist(angle(rng), 0.5 + unit(rng)),
        };
        for (const GermSpec& s : specs) CHECK(evaluate(s, {0.0, 0.0}) == PlanePoint{0.0, 0.0});
    }
}

TEST_CASE("inverse consistency on the injectivity disc") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(1e-3, 0.4);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    for (int qr = 1; qr <= 6; ++qr) {
        GermSpec spec = qr % 2 == 0 ? make_parabolic(1, 2, qr / 2) : make_parabolic(0, 1, qr);
        for (int i = 0; i < 200; ++i) {
            PlanePoint z = std::polar(radius(rng), kTau * angle(rng));
            PlanePoint w = evaluate(spec, z);
            PlanePoint back = evaluate_inverse(spec, w);
            CHECK(dist(back, z) < 1e-9);
        }
    }
}

TEST_CASE("conjugation identity h(f(h^{-1}(z)))") {
    HomeoSpec h = make_log_spiral(1.5);
    GermSpec base = make_contraction({0.5, 0.0});
    GermSpec conj = make_conjugated(h, base);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> radius(1e-4, 0.5);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        PlanePoint z = std::polar(radius(rng), kTau * angle(rng));
        PlanePoint direct = evaluate(conj, z);
        PlanePoint manual = homeo_apply(h, evaluate(base, homeo_apply_inverse(h, z)));
        CHECK(dist(direct, manual) < 1e-9);
    }
}

TEST_CASE("orientation preserved by all catalog variants") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> radius(0.05, 0.4);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    for (const CatalogEntry& entry : builtin_catalog()) {
        for (int i = 0; i < 20; ++i) {
            PlanePoint z = std::polar(radius(rng), kTau * angle(rng));
            double area = image_triangle_area(
                [&](PlanePoint p) { return evaluate(entry.spec, p); }, z, 1e-6);
            CHECK(area > 0.0);
        }
    }
    HomeoSpec homeos[] = {make_radial_power(0.5), make_radial_power(2.0), make_log_spiral(-1.5),
                          make_homeo_compose(make_radial_power(2.0), make_log_spiral(1.0))};
    for (const HomeoSpec& h : homeos) {
        for (int i = 0; i < 20; ++i) {
            PlanePoint z = std::polar(radius(rng), kTau * angle(rng));
            double area =
                image_triangle_area([&](PlanePoint p) { return homeo_apply(h, p); }, z, 1e-6);
            CHECK(area > 0.0);
        }
    }
}

TEST_CASE("homeomorphism round-trip on |z| in [1e-6, 10]") {
    HomeoSpec homeos[] = {make_radial_power(0.5), make_radial_power(2.0), make_log_spiral(1.5),
                          make_log_spiral(-1.5),
                          make_homeo_compose(make_log_spiral(0.7), make_radial_power(3.0))};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> logr(std::log(1e-6), std::log(10.0));
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    for (const HomeoSpec& h : homeos) {
        for (int i = 0; i < 300; ++i) {
            PlanePoint z = std::polar(std::exp(logr(rng)), kTau * angle(rng));
            CHECK(dist(homeo_apply_inverse(h, homeo_apply(h, z)), z) < 1e-9 * std::max(1.0, std::abs(z)));
        }
    }
}

TEST_CASE("spec validation errors") {
    CHECK_THROWS_AS(make_parabolic(0, 2, 1), SpecError);   // p=0 forces q=1
    CHECK_THROWS_AS(make_parabolic(2, 4, 1), SpecError);   // gcd != 1
    CHECK_THROWS_AS(make_parabolic(1, 0, 1), SpecError);   // q >= 1
    CHECK_THROWS_AS(make_contraction({1.0, 0.0}), SpecError);
    CHECK_THROWS_AS(make_contraction({0.0, 0.0}), SpecError);
    CHECK_THROWS_AS(make_dilatation({0.5, 0.0}), SpecError);
    CHECK_THROWS_AS(make_twist(0.1, 0.0), SpecError);
    CHECK_THROWS_AS(make_radial_power(-1.0), SpecError);

    GermSpec nested = make_contraction({0.5, 0.0});
    for (int i = 0; i < 4; ++i) nested = make_conjugated(make_log_spiral(0.1), nested);
    CHECK_THROWS_AS(make_conjugated(make_log_spiral(0.1), nested), SpecError);

    CHECK_THROWS_AS(evaluate(make_dilatation({2.0, 0.0}), {9e11, 0.0}), OutOfRange);
}

TEST_CASE("radial profile strips conjugators") {
    GermSpec conj = make_conjugated(
        make_radial_power(2.0),
        make_conjugated(make_log_spiral(1.0), make_parabolic(0, 1, 2)));
    RadialProfile prof = radial_profile(conj);
    CHECK(prof.kind == RadialKind::Parabolic);
    CHECK(prof.ell == 2);
    CHECK(prof.modulus_exponent == doctest::Approx(2.0));
    // base_point inverts the whole chain
    PlanePoint z{0.3, 0.1};
    PlanePoint base = prof.base_point(z);
    PlanePoint expect = homeo_apply_inverse(make_log_spiral(1.0),
                                            homeo_apply_inverse(make_radial_power(2.0), z));
    CHECK(dist(base, expect) < 1e-12);
    CHECK(prof.base_radius(0.25) == doctest::Approx(0.5));
}
