#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "germlab/germ.hpp"
#include "germlab/plane.hpp"

namespace germlab {

enum class PetalKind { Attracting, Repelling };
enum class PetalOrientation { Direct, Indirect };

/// Fatou coordinate w = -1/(ell z^ell). On each attracting petal the
/// increment w(f(z)) - w(z) tends to 1 as z -> 0.
PlanePoint fatou_coordinate(PlanePoint z, int ell);

/// The ell directions of initial attraction for z -> z(1+z^ell): angles
/// (2k+1)/(2 ell) turns, k = 0..ell-1.
std::vector<double> attracting_directions(int ell);

/// Repelling directions: k/ell turns.
std::vector<double> repelling_directions(int ell);

/// Fatou-coordinate petal: the connected piece of {|Re fatou| > threshold}
/// (positive side for attracting, negative for repelling) inside the angular
/// wedge of half-width 1/(2 ell) turn around the axis.
struct PetalModel {
    PetalKind kind = PetalKind::Attracting;
    double axis_turns = 0.0;
    double fatou_threshold = 4.0;
    PetalOrientation orientation = PetalOrientation::Direct;
    int ell = 1;

    bool contains(PlanePoint z) const;

    /// Petal-aligned coordinate: Re > threshold on the petal for both kinds;
    /// advances by +1 per application of the petal's own forward map (f for
    /// attracting petals, f^{-1} for repelling ones).
    PlanePoint aligned_fatou(PlanePoint z) const;
};

/// The 2 ell petals of the normal form z -> e^{2 pi i p/q} z (1 + z^{qr}),
/// ell = qr, ordered by increasing axis angle (slot j at j/(2 ell) turns,
/// even slots repelling, odd slots attracting). For p != 0 the petals belong
/// to the iterate f^q; f itself permutes them.
struct PetalAtlas {
    int p = 0, q = 1, r = 1;
    int ell = 1;
    double fatou_threshold = 4.0;
    double disc_radius = 0.5;
    std::vector<PetalModel> petals;

    const PetalModel& petal(int i) const { return petals[static_cast<std::size_t>(i)]; }
    int petal_count() const { return static_cast<int>(petals.size()); }
};

PetalAtlas build_petal_atlas(int p, int q, int r, double fatou_threshold = 4.0,
                             double disc_radius = 0.5);

struct PetalPermutation {
    std::vector<int> map;  // petal i -> map[i]
    int shift = 0;         // i0 with map[i] = i + i0 (mod 2 ell)
    int order = 1;         // order of the shift in Z/2ell
    int cycle_count = 1;
    int attracting_cycle_count = 1;
};

/// The permutation induced by f on the atlas petals: nearest petal axis of
/// the image of each axis sample. Validates the shift structure (i0 even,
/// order dividing q).
PetalPermutation petal_permutation(int p, int q, int r, const PetalAtlas& atlas);

/// Nice sector between adjacent petals i and i+1: a forward-invariant (for
/// its kind's dynamics) channel in the invariant leaf between the two petal
/// axes, entered through a gate segment on the repelling-side petal boundary.
/// Membership and entry data are computed by marching the exact dynamics of
/// the power coordinate u = z^ell back to the gate.
struct SectorModel {
    PetalKind kind = PetalKind::Attracting;  // attracting: f(S) within S
    int ell = 1;
    int index = 0;
    double leaf_sign = 1.0;   // +1: upper-w leaf, -1: lower-w leaf
    double gate_real = -4.0;  // gate line Re v = gate_real (v = leaf-adjusted w)
    double gate_low = 16.0;   // entry Im window [gate_low, gate_high]
    double gate_high = 64.0;
    double angle_lo = 0.0;    // angular gap (turns) selecting the leaf
    double angle_hi = 0.5;
    double disc_radius = 0.5;

    struct Entry {
        bool member = false;
        double time = 0.0;     // continuous steps since gate crossing
        double gate_im = 0.0;  // Im v at the crossing
    };

    Entry entry_data(PlanePoint z) const;
    bool contains(PlanePoint z) const { return entry_data(z).member; }

    /// One application of the sector's forward dynamics (f for attracting,
    /// f^{-1} for repelling), restricted to the canonical map z(1+z^ell).
    PlanePoint step(PlanePoint z) const;
};

/// Throws InvarianceFailure if no gate placement passes the 10^4-point
/// forward-invariance sample after 8 shrink steps.
SectorModel build_nice_sector(const PetalAtlas& atlas, int i);

/// {"ell":..., "petals":[{"kind":...,"axis_turns":...,"threshold":...,
///  "orientation":...}, ...]}
std::string atlas_to_json(const PetalAtlas& atlas);

}  // namespace germlab
