#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "germlab/catalog.hpp"
#include "germlab/errors.hpp"
#include "germlab/shorttrip.hpp"
#include "json.hpp"

using namespace germlab;

namespace {
const double kGolden = 0.6180339887498949;
}

TEST_CASE("measure_N_W on linear germs") {
    DiscRegion V(0.5), W(0.05);

    // closed-form orbit oracle: floor(log2(|x|/0.05)) <= 3 with |x| < 0.5
    MeasureResult con = measure_N_W(make_contraction({0.5, 0.0}), V, W, 10000, 100000, 42);
    CHECK(con.n_hat == 3);
    CHECK_FALSE(con.censored);
    CHECK_FALSE(con.witness.has_value());

    MeasureResult rot =
        measure_N_W(make_rotation(kGolden, std::nullopt), V, W, 10000, 100000, 42);
    CHECK(rot.censored);
    REQUIRE(rot.witness.has_value());
    double wr = std::abs(*rot.witness);
    CHECK(wr >= W.radius);
    CHECK(wr < V.radius);

    MeasureResult dil = measure_N_W(make_dilatation({2.0, 0.0}), V, W, 10000, 100000, 42);
    CHECK(dil.n_hat <= 3);
    CHECK_FALSE(dil.censored);

    CHECK_THROWS_AS(measure_N_W(make_contraction({0.5, 0.0}), V, DiscRegion(0.6), 10, 100, 1),
                    BadRegions);
}

TEST_CASE("contraction N_hat formula across levels") {
    GermSpec con = make_contraction({0.5, 0.0});
    ShortTripReport report = short_trip_verdict(con, DiscRegion(0.5), 6, 10000, 100000, 42);
    CHECK(report.verdict == Verdict::Holds);
    for (int k = 1; k <= 6; ++k) {
        std::int64_t n = report.levels[static_cast<std::size_t>(k - 1)].n_hat;
        CHECK(n >= k - 1);
        CHECK(n <= k + 1);
    }
}

TEST_CASE("verdicts over the model families") {
    DiscRegion V(0.5);

    ShortTripReport para = short_trip_verdict(make_parabolic(0, 1, 1), V, 6, 10000, 100000, 42);
    CHECK(para.verdict == Verdict::Holds);
    // N_hat grows like 1/r_W; timing oracle: the real-axis orbit needs about
    // 1/r steps to pass from |z| = r to r/2, so level ratios sit near 2
    for (std::size_t k = 2; k < para.levels.size(); ++k) {
        double ratio = static_cast<double>(para.levels[k].n_hat) /
                       static_cast<double>(para.levels[k - 1].n_hat);
        CHECK(ratio > 1.6);
        CHECK(ratio < 2.6);
    }
    // direct-orbit timing from |z| = r to r/2 at the deepest level
    {
        double r = para.levels.back().w_radius;
        GermSpec spec = make_parabolic(0, 1, 1);
        PlanePoint z{-2 * r, 0.0};
        std::int64_t steps = 0;
        while (std::abs(z) > r && steps < 1000000) {
            z = evaluate(spec, z);
            ++steps;
        }
        double expect = static_cast<double>(para.levels.back().n_hat);
        CHECK(static_cast<double>(steps) > 0.1 * expect);
        CHECK(static_cast<double>(steps) < 2.0 * expect);
    }

    ShortTripReport rot =
        short_trip_verdict(make_rotation(0.2, Rational{1, 5}), V, 6, 4000, 100000, 42);
    CHECK(rot.verdict == Verdict::Fails);
    for (const LevelReport& level : rot.levels) {
        CHECK(level.censored);
        CHECK(level.witness.has_value());
    }

    // the twist preserves moduli exactly (formula oracle), so it must fail
    GermSpec twist = make_twist(kGolden, 1.0);
    for (double r : {0.1, 0.2, 0.35}) {
        PlanePoint z = std::polar(r, 1.1);
        CHECK(std::fabs(std::abs(evaluate(twist, z)) - r) < 1e-15);
    }
    ShortTripReport tw = short_trip_verdict(twist, V, 6, 4000, 100000, 42);
    CHECK(tw.verdict == Verdict::Fails);
}

TEST_CASE("monotone censoring under a larger cap") {
    DiscRegion V(0.5);
    for (const GermSpec& spec :
         {make_rotation(0.2, Rational{1, 5}), make_twist(kGolden, 1.0)}) {
        MeasureResult small = measure_N_W(spec, V, DiscRegion(0.1), 2000, 10000, 7);
        MeasureResult big = measure_N_W(spec, V, DiscRegion(0.1), 2000, 100000, 7);
        CHECK(small.censored);
        CHECK(big.censored);
    }
}

TEST_CASE("verdict is invariant under catalog conjugators") {
    DiscRegion V(0.3);
    GermSpec bases[] = {make_contraction({0.5, 0.0}), make_parabolic(0, 1, 1),
                        make_rotation(kGolden, std::nullopt), make_twist(kGolden, 1.0)};
    HomeoSpec homeos[] = {make_radial_power(0.5), make_radial_power(2.0), make_log_spiral(1.5),
                          make_log_spiral(-1.5)};
    for (const GermSpec& base : bases) {
        Verdict expect = short_trip_verdict(base, V, 4, 2500, 100000, 42).verdict;
        for (const HomeoSpec& h : homeos) {
            GermSpec conj = make_conjugated(h, base);
            Verdict got = short_trip_verdict(conj, V, 4, 2500, 100000, 42).verdict;
            CHECK(got == expect);
        }
    }
}

TEST_CASE("verdicts are seed stable") {
    DiscRegion V(0.5);
    GermSpec specs[] = {make_contraction({0.5, 0.0}), make_parabolic(0, 1, 2),
                        make_rotation(kGolden, std::nullopt)};
    for (const GermSpec& spec : specs) {
        Verdict first = short_trip_verdict(spec, V, 6, 2500, 100000, 1).verdict;
        for (std::uint64_t seed = 2; seed <= 5; ++seed) {
            CHECK(short_trip_verdict(spec, V, 6, 2500, 100000, seed).verdict == first);
        }
    }
}

TEST_CASE("classification at reduced resolution") {
    ClassifyConfig config;
    config.resolution = 256;
    config.samples = 4000;

    ShortTripReport rotated =
        classify_germ(make_contraction(0.5 * std::polar(1.0, 0.3)), config);
    CHECK(rotated.classification.kind == GermClass::Contraction);

    ShortTripReport para = classify_germ(make_parabolic(0, 1, 2), config);
    CHECK(para.classification.kind == GermClass::ParabolicLike);
    CHECK(para.classification.ell_hat == 2);

    ShortTripReport dil = classify_germ(make_dilatation({2.0, 0.0}), config);
    CHECK(dil.classification.kind == GermClass::Dilatation);

    config.v_radius = 0.3;
    ShortTripReport conj = classify_germ(
        make_conjugated(make_log_spiral(1.5), make_contraction({0.5, 0.0})), config);
    CHECK(conj.classification.kind == GermClass::Contraction);

    ShortTripReport rot = classify_germ(make_rotation(0.2, Rational{1, 5}), config);
    CHECK(rot.classification.kind == GermClass::NotShortTrip);
}

TEST_CASE("report JSON shape") {
    ShortTripReport report =
        short_trip_verdict(make_parabolic(0, 1, 1), DiscRegion(0.5), 3, 1000, 100000, 42);
    nlohmann::json j = nlohmann::json::parse(report_to_json(report));
    CHECK(j.contains("V_radius"));
    CHECK(j.contains("levels"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("classification"));
    CHECK(j.contains("seed"));
    CHECK(j.contains("cap"));
    REQUIRE(j["levels"].is_array());
    double prev = 1e9;
    for (const auto& level : j["levels"]) {
        CHECK(level.contains("W_radius"));
        CHECK(level.contains("N_hat"));
        CHECK(level.contains("censored"));
        CHECK(level.contains("witness"));
        if (!level["censored"].get<bool>()) CHECK(level["witness"].is_null());
        double w = level["W_radius"].get<double>();
        CHECK(w < prev);
        prev = w;
    }
    CHECK(j["verdict"].get<std::string>() == "holds");

    std::string csv = levels_to_csv(report);
    CHECK(csv.rfind("W_radius,N_hat,censored\n", 0) == 0);
}

TEST_CASE("measurement is schedule independent") {
    DiscRegion V(0.5), W(0.05);
    GermSpec para = make_parabolic(0, 1, 2);

    setenv("GERMLAB_THREADS", "1", 1);
    MeasureResult one = measure_N_W(para, V, W, 3000, 100000, 42);
    setenv("GERMLAB_THREADS", "3", 1);
    MeasureResult three = measure_N_W(para, V, W, 3000, 100000, 42);
    unsetenv("GERMLAB_THREADS");

    CHECK(one.n_hat == three.n_hat);
    CHECK(one.censored == three.censored);
    CHECK(one.base_n_hat == three.base_n_hat);
}
