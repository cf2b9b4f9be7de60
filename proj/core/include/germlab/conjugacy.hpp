#pragma once

#include <functional>
#include <string>

#include "germlab/disc.hpp"
#include "germlab/flower.hpp"
#include "germlab/germ.hpp"

namespace germlab {

enum class ConjugacyModel { Contraction, HalfDisc, Translation };

/// An evaluable change of coordinates with its measured conjugacy defect.
/// verified_residual is the sup over a validation grid (disjoint from the
/// construction samples) of the model relation error:
///   Contraction / HalfDisc:  |Phi(f(z)) - Phi(z)/2|
///   Translation:             |F(f(z)) - F(z) - 1|
/// where f is the model's forward map (the inverse dynamics for repelling
/// inputs, reported by direction = -1).
struct ConjugacyMap {
    ConjugacyModel model = ConjugacyModel::Contraction;
    std::function<PlanePoint(PlanePoint)> phi;
    std::function<PlanePoint(PlanePoint)> forward;  // the conjugated dynamics
    std::function<bool(PlanePoint)> in_domain;
    double verified_residual = 0.0;
    std::string domain_description;
    int direction = +1;  // -1: model built for the inverse dynamics
};

/// Fundamental-annulus conjugacy between a disc-contracting germ and
/// z -> z/2: the annulus between the boundary of D and its image is mapped
/// onto {1/2 <= |z| <= 1} by matched angular parametrization and log-radial
/// interpolation, then spread by the dynamical rule Phi(f^n x) = 2^-n Phi(x).
/// Throws NotContracting when f(boundary of D) is not strictly inside D, and
/// ParametrizationFold when the image curve is not star-shaped about 0.
ConjugacyMap contraction_conjugacy(const GermSpec& spec, DiscRegion D);

/// Conjugacy between a nice sector and the half-disc {|z| <= 1, Im z >= 0}
/// satisfying Phi(f(z)) = Phi(z)/2; the two sector sides land on [-1, 0] and
/// [0, 1], geometric spacing along the sides. Repelling sectors are handled
/// through the inverse dynamics.
ConjugacyMap sector_conjugacy(const PetalAtlas& atlas, const SectorModel& sector);

/// Fatou-style translation model on an atlas petal: F(f(z)) = F(z) + 1 built
/// by dynamical extension from the fundamental strip of the petal-aligned
/// coordinate. Repelling petals receive the model for the inverse dynamics.
ConjugacyMap translation_model_on_petal(const PetalAtlas& atlas, int petal_index);

/// Sample table (z_re, z_im, phi_re, phi_im) over an n x n grid filtered to
/// the domain.
std::string conjugacy_sample_csv(const ConjugacyMap& map, double extent, int n);

/// {"model":..., "residual":..., "domain":...}
std::string conjugacy_metadata_json(const ConjugacyMap& map);

}  // namespace germlab
