#include "germlab/catalog.hpp"

#include <cmath>
#include <sstream>

namespace germlab {

std::vector<CatalogEntry> builtin_catalog() {
    const double golden = 0.6180339887498949;
    std::vector<CatalogEntry> rows;

    auto add = [&](GermSpec spec, double v, Verdict ev, Classification ec) {
        CatalogEntry e{std::move(spec), "", v, ev, ec};
        e.name = germ_name(e.spec);
        rows.push_back(std::move(e));
    };

    add(make_contraction({0.5, 0.0}), 0.5, Verdict::Holds, {GermClass::Contraction, 0});
    add(make_contraction(0.5 * std::polar(1.0, 0.3)), 0.5, Verdict::Holds,
        {GermClass::Contraction, 0});
    add(make_dilatation({2.0, 0.0}), 0.5, Verdict::Holds, {GermClass::Dilatation, 0});
    add(make_parabolic(0, 1, 1), 0.5, Verdict::Holds, {GermClass::ParabolicLike, 1});
    add(make_parabolic(0, 1, 2), 0.5, Verdict::Holds, {GermClass::ParabolicLike, 2});
    add(make_parabolic(0, 1, 3), 0.5, Verdict::Holds, {GermClass::ParabolicLike, 3});
    add(make_parabolic(1, 3, 2), 0.5, Verdict::Holds, {GermClass::ParabolicLike, 6});
    add(make_rotation(0.2, Rational{1, 5}), 0.5, Verdict::Fails,
        {GermClass::NotShortTrip, 0});
    add(make_rotation(golden, std::nullopt), 0.5, Verdict::Fails, {GermClass::NotShortTrip, 0});
    add(make_twist(golden, 1.0), 0.5, Verdict::Fails, {GermClass::NotShortTrip, 0});
    add(make_conjugated(make_log_spiral(1.5), make_contraction({0.5, 0.0})), 0.3, Verdict::Holds,
        {GermClass::Contraction, 0});
    add(make_conjugated(make_radial_power(2.0), make_parabolic(0, 1, 1)), 0.3, Verdict::Holds,
        {GermClass::ParabolicLike, 1});
    return rows;
}

std::vector<TrichotomyRow> run_trichotomy(const ClassifyConfig& base) {
    std::vector<TrichotomyRow> rows;
    for (const CatalogEntry& entry : builtin_catalog()) {
        ClassifyConfig config = base;
        config.v_radius = entry.v_radius;
        ShortTripReport report = classify_germ(entry.spec, config);

        TrichotomyRow row;
        row.name = entry.name;
        row.verdict = report.verdict;
        row.classification = report.classification;
        row.expected_verdict = entry.expected_verdict;
        row.expected_class = entry.expected_class;
        row.match = report.verdict == entry.expected_verdict &&
                    report.classification.kind == entry.expected_class.kind &&
                    report.classification.ell_hat == entry.expected_class.ell_hat;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string trichotomy_markdown(const std::vector<TrichotomyRow>& rows) {
    std::ostringstream out;
    out << "| germ | verdict | classification | expected | match |\n";
    out << "|---|---|---|---|---|\n";
    for (const TrichotomyRow& row : rows) {
        out << "| " << row.name << " | " << verdict_name(row.verdict) << " | "
            << class_name(row.classification) << " | " << class_name(row.expected_class) << " | "
            << (row.match ? "true" : "false") << " |\n";
    }
    return out.str();
}

}  // namespace germlab
