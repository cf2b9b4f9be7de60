#pragma once

#include <string>
#include <vector>

#include "germlab/shorttrip.hpp"

namespace germlab {

/// One row of the built-in germ catalog: the model, the neighbourhood radius
/// it is probed with, and the behaviour the trichotomy predicts for it.
struct CatalogEntry {
    GermSpec spec;
    std::string name;
    double v_radius = 0.5;
    Verdict expected_verdict = Verdict::Holds;
    Classification expected_class;
};

/// The twelve catalog germs: contractions, a dilatation, four parabolic
/// normal forms, two rotations, a twist, and two conjugated variants.
std::vector<CatalogEntry> builtin_catalog();

struct TrichotomyRow {
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    Classification classification;
    Verdict expected_verdict = Verdict::Holds;
    Classification expected_class;
    bool match = false;
};

/// Classifies every catalog germ with the given configuration (v_radius is
/// taken per entry).
std::vector<TrichotomyRow> run_trichotomy(const ClassifyConfig& base);

/// Markdown table: germ, verdict, classification, expected class, match.
std::string trichotomy_markdown(const std::vector<TrichotomyRow>& rows);

}  // namespace germlab
