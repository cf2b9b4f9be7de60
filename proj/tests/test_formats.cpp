#include "doctest.h"
#include "germlab/catalog.hpp"
#include "germlab/flower.hpp"
#include "germlab/germ.hpp"
#include "json.hpp"

using namespace germlab;

TEST_CASE("germ JSON wire format round-trips") {
    const char* examples[] = {
        R"({"type":"contraction","lambda":[0.5,0.0]})",
        R"({"type":"dilatation","lambda":[2.0,0.0]})",
        R"({"type":"rotation","turns":0.2,"rational":[1,5]})",
        R"({"type":"rotation","turns":0.6180339887498949,"rational":null})",
        R"({"type":"parabolic","p":1,"q":3,"r":2})",
        R"({"type":"twist","theta0":0.25,"kappa":1.0})",
        R"({"type":"conjugated","outer":{"type":"radial_power","alpha":2.0},)"
        R"("base":{"type":"parabolic","p":0,"q":1,"r":1}})",
        R"({"type":"conjugated","outer":{"type":"compose",)"
        R"("first":{"type":"log_spiral","c":1.5},"second":{"type":"radial_power","alpha":0.5}},)"
        R"("base":{"type":"contraction","lambda":[0.5,0.0]}})",
    };
    for (const char* text : examples) {
        GermSpec spec = parse_germ_json(text);
        std::string emitted = germ_to_json(spec);
        GermSpec again = parse_germ_json(emitted);
        CHECK(germ_to_json(again) == emitted);
        // canonical field names survive
        nlohmann::json j = nlohmann::json::parse(emitted);
        CHECK(j.contains("type"));
    }
    CHECK_THROWS_AS(parse_germ_json("{"), SpecError);
    CHECK_THROWS_AS(parse_germ_json(R"({"type":"sombrero"})"), SpecError);
    CHECK_THROWS_AS(parse_germ_json(R"({"type":"rotation","turns":0.3,"rational":[1,5]})"),
                    SpecError);
}

TEST_CASE("catalog JSON serializations parse back") {
    for (const CatalogEntry& entry : builtin_catalog()) {
        std::string text = germ_to_json(entry.spec);
        GermSpec again = parse_germ_json(text);
        CHECK(germ_to_json(again) == text);
    }
}

TEST_CASE("atlas JSON schema") {
    PetalAtlas atlas = build_petal_atlas(0, 1, 2);
    nlohmann::json j = nlohmann::json::parse(atlas_to_json(atlas));
    CHECK(j["ell"].get<int>() == 2);
    REQUIRE(j["petals"].is_array());
    REQUIRE(j["petals"].size() == 4);
    for (const auto& petal : j["petals"]) {
        CHECK(petal.contains("kind"));
        CHECK(petal.contains("axis_turns"));
        CHECK(petal.contains("threshold"));
        CHECK(petal.contains("orientation"));
        std::string kind = petal["kind"].get<std::string>();
        CHECK((kind == "attracting" || kind == "repelling"));
        std::string orient = petal["orientation"].get<std::string>();
        CHECK((orient == "direct" || orient == "indirect"));
    }
}

TEST_CASE("trichotomy markdown layout") {
    std::vector<TrichotomyRow> rows(1);
    rows[0].name = "contraction(0.5)";
    rows[0].verdict = Verdict::Holds;
    rows[0].classification = {GermClass::Contraction, 0};
    rows[0].expected_class = {GermClass::Contraction, 0};
    rows[0].match = true;
    std::string table = trichotomy_markdown(rows);
    CHECK(table.rfind("| germ | verdict | classification | expected | match |\n", 0) == 0);
    CHECK(table.find("| contraction(0.5) | holds | contraction | contraction | true |") !=
          std::string::npos);
}
