#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "germlab/catalog.hpp"
#include "germlab/components.hpp"
#include "germlab/errors.hpp"
#include "germlab/raster.hpp"

using namespace germlab;

TEST_CASE("raster validation") {
    GermSpec con = make_contraction({0.5, 0.0});
    CHECK_THROWS_AS(estimate_stable_set(con, DiscRegion(0.5), 100, 100), SpecError);
    CHECK_THROWS_AS(estimate_stable_set(con, DiscRegion(0.5), 100, 32), SpecError);
    CHECK_THROWS_AS(estimate_stable_set(con, DiscRegion(0.5), 0, 128), SpecError);
}

TEST_CASE("stable set of linear germs") {
    DiscRegion V(0.5);
    GridRaster stable = estimate_stable_set(make_contraction({0.5, 0.0}), V, 1000, 128);
    for (int iy = 0; iy < 128; ++iy)
        for (int ix = 0; ix < 128; ++ix) {
            PlanePoint z = stable.is_origin_cell(ix, iy) ? PlanePoint{0, 0}
                                                         : stable.cell_center(ix, iy);
            CHECK((stable.at(ix, iy) == CellLabel::InSet) == V.contains(z));
        }

    GridRaster dstable = estimate_stable_set(make_dilatation({2.0, 0.0}), V, 10000, 128);
    std::int64_t in = dstable.count(CellLabel::InSet);
    CHECK(in == 1);  // only the origin cell
    CHECK(dstable.at(dstable.origin_index(), dstable.origin_index()) == CellLabel::InSet);

    GridRaster dunstable = estimate_unstable_set(make_dilatation({2.0, 0.0}), V, 1000, 128);
    for (int iy = 0; iy < 128; ++iy)
        for (int ix = 0; ix < 128; ++ix) {
            PlanePoint z = dunstable.is_origin_cell(ix, iy) ? PlanePoint{0, 0}
                                                            : dunstable.cell_center(ix, iy);
            CHECK((dunstable.at(ix, iy) == CellLabel::InSet) == V.contains(z));
        }
}

TEST_CASE("parabolic stable membership at the probe points") {
    DiscRegion V(0.5);
    GermSpec para = make_parabolic(0, 1, 1);

    // direct-iteration oracle at the two probe points
    {
        PlanePoint z{-0.3, 0.0};
        bool stays = true;
        for (int n = 0; n < 10000 && stays; ++n) {
            z = evaluate(para, z);
            stays = V.contains(z);
        }
        CHECK(stays);
        z = {0.3, 0.0};
        bool escaped = false;
        for (int n = 0; n < 10000 && !escaped; ++n) {
            z = evaluate(para, z);
            escaped = !V.contains(z);
        }
        CHECK(escaped);
    }

    GridRaster stable = estimate_stable_set(para, V, 10000, 256);
    GridRaster unstable = estimate_unstable_set(para, V, 10000, 256);
    auto label_at = [&](const GridRaster& r, double x, double y) {
        int ix = static_cast<int>((x + r.window_radius) / r.cell_size());
        int iy = static_cast<int>((y + r.window_radius) / r.cell_size());
        return r.at(ix, iy);
    };
    CHECK(label_at(stable, -0.3, 0.0) == CellLabel::InSet);
    CHECK(label_at(stable, 0.3, 0.0) == CellLabel::OutOfSet);
    CHECK(label_at(unstable, 0.3, 0.0) == CellLabel::InSet);
    CHECK(label_at(unstable, -0.3, 0.0) == CellLabel::OutOfSet);
}

TEST_CASE("origin cell is never OutOfSet") {
    for (const CatalogEntry& entry : builtin_catalog()) {
        GridRaster stable =
            estimate_stable_set(entry.spec, DiscRegion(entry.v_radius), 500, 64);
        CHECK(stable.at(stable.origin_index(), stable.origin_index()) != CellLabel::OutOfSet);
    }
}

TEST_CASE("finite-horizon stable sets shrink with horizon") {
    DiscRegion V(0.5);
    GermSpec para = make_parabolic(0, 1, 2);
    GridRaster h1 = estimate_stable_set(para, V, 200, 128);
    GridRaster h2 = estimate_stable_set(para, V, 2000, 128);
    GridRaster h3 = estimate_stable_set(para, V, 20000, 128);
    for (int iy = 0; iy < 128; ++iy)
        for (int ix = 0; ix < 128; ++ix) {
            if (h2.at(ix, iy) == CellLabel::InSet) CHECK(h1.at(ix, iy) == CellLabel::InSet);
            if (h3.at(ix, iy) == CellLabel::InSet) CHECK(h2.at(ix, iy) == CellLabel::InSet);
        }
}

TEST_CASE("stable-union-unstable covers a neighbourhood of 0") {
    for (const CatalogEntry& entry : builtin_catalog()) {
        if (entry.expected_verdict != Verdict::Holds) continue;
        DiscRegion V(entry.v_radius);
        GridRaster stable = estimate_stable_set(entry.spec, V, 10000, 256);
        GridRaster unstable = estimate_unstable_set(entry.spec, V, 10000, 256);
        double cov = union_coverage(stable, unstable, DiscRegion(0.1 * V.radius));
        CHECK(cov >= 0.999);
        std::int64_t und = undetermined_count(unstable);
        CHECK(static_cast<double>(und) < 0.001 * 256 * 256);
    }
}

TEST_CASE("component analysis of parabolic flowers") {
    DiscRegion V(0.5);
    for (int ell : {1, 2}) {
        GermSpec para = make_parabolic(0, 1, ell);
        GridRaster stable = estimate_stable_set(para, V, 10000, 256);
        GridRaster unstable = estimate_unstable_set(para, V, 10000, 256);
        ComponentLabeling comps = component_analysis(stable, unstable);
        CHECK(comps.origin_touching_count() == 2 * ell);
        for (const ComponentInfo& c : comps.components) {
            if (c.touches_origin_ring) CHECK(c.hole_count == 0);
        }
        // every sizable component reaches the origin ring
        std::int64_t in_total = 0;
        for (const ComponentInfo& c : comps.components) in_total += c.cell_count;
        for (const ComponentInfo& c : comps.components)
            if (c.cell_count >= in_total / 200) CHECK(c.touches_origin_ring);
    }
}

TEST_CASE("contraction intersection stays near the origin") {
    DiscRegion V(0.5);
    GridRaster stable = estimate_stable_set(make_contraction({0.5, 0.0}), V, 10000, 256);
    GridRaster unstable = estimate_unstable_set(make_contraction({0.5, 0.0}), V, 10000, 256);
    ComponentLabeling comps = component_analysis(stable, unstable);
    CHECK(comps.component_count <= 2);
    int oi = 128;
    for (int iy = 0; iy < 256; ++iy)
        for (int ix = 0; ix < 256; ++ix)
            if (comps.id_at(ix, iy) != 0) {
                double dx = ix - oi, dy = iy - oi;
                CHECK(dx * dx + dy * dy < 40.0 * 40.0);
            }
}

TEST_CASE("boundary arc decomposition") {
    DiscRegion V(0.5), D(0.15);
    CHECK(boundary_arc_decomposition(make_parabolic(0, 1, 1), D, V, 10000, 512) == 2);
    CHECK(boundary_arc_decomposition(make_parabolic(0, 1, 3), D, V, 10000, 512) == 6);
    CHECK(boundary_arc_decomposition(make_contraction({0.5, 0.0}), D, V, 10000, 512) == 0);

    CHECK_THROWS_AS(
        boundary_arc_decomposition(make_contraction({0.5, 0.0}), D, V, 10000, 100), SpecError);
    CHECK_THROWS_AS(
        boundary_arc_decomposition(make_contraction({0.5, 0.0}), DiscRegion(0.6), V, 10000, 512),
        BadRegions);

    // alternation forces an even count on the whole catalog
    for (const CatalogEntry& entry : builtin_catalog()) {
        int arcs = boundary_arc_decomposition(entry.spec, DiscRegion(0.3 * entry.v_radius),
                                              DiscRegion(entry.v_radius), 2000, 512);
        CHECK(arcs % 2 == 0);
    }
}

TEST_CASE("raster construction is schedule independent") {
    GermSpec para = make_parabolic(1, 3, 1);
    setenv("GERMLAB_THREADS", "1", 1);
    GridRaster one = estimate_stable_set(para, DiscRegion(0.5), 2000, 128);
    setenv("GERMLAB_THREADS", "4", 1);
    GridRaster four = estimate_stable_set(para, DiscRegion(0.5), 2000, 128);
    unsetenv("GERMLAB_THREADS");
    CHECK(raster_to_pgm(one) == raster_to_pgm(four));
}

TEST_CASE("PGM bytes are well-formed and deterministic") {
    GridRaster raster = estimate_stable_set(make_parabolic(0, 1, 1), DiscRegion(0.5), 500, 64);
    std::string bytes = raster_to_pgm(raster);
    std::string header = "P5\n64 64\n255\n";
    REQUIRE(bytes.size() == header.size() + 64 * 64);
    CHECK(bytes.compare(0, header.size(), header) == 0);
    for (std::size_t i = header.size(); i < bytes.size(); ++i) {
        unsigned char v = static_cast<unsigned char>(bytes[i]);
        CHECK((v == 0 || v == 128 || v == 255));
    }
    GridRaster again = estimate_stable_set(make_parabolic(0, 1, 1), DiscRegion(0.5), 500, 64);
    CHECK(raster_to_pgm(again) == bytes);
}
