#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "germlab/raster.hpp"

namespace germlab {

struct ComponentInfo {
    int id = 0;
    std::int64_t cell_count = 0;
    bool touches_origin_ring = false;
    int min_ix = 0, min_iy = 0, max_ix = 0, max_iy = 0;
    int hole_count = 0;
};

/// Connected components (8-connectivity) of the cellwise intersection of a
/// stable and an unstable raster, with the origin cell excluded.
///
/// The separating escape channels between adjacent intersection components
/// pinch toward 0 faster than any grid can resolve, so the raster merges all
/// components inside a small central disc. That unresolved core — the maximal
/// run of full cell-rings that are entirely InSet — is excluded along with
/// the origin cell, and "touches the origin ring" means the component reaches
/// the cells bordering the excluded core. With no merged core this reduces to
/// the 8 neighbors of the origin cell.
struct ComponentLabeling {
    int resolution = 0;
    double window_radius = 0.0;
    int core_ring = 0;           // rings 1..core_ring were fully InSet (excluded)
    std::vector<int> component_id;  // 0 = unlabeled
    int component_count = 0;
    std::vector<ComponentInfo> components;

    int id_at(int ix, int iy) const {
        return component_id[static_cast<std::size_t>(iy) * resolution + ix];
    }
    int origin_touching_count() const;
};

ComponentLabeling component_analysis(const GridRaster& stable, const GridRaster& unstable);

/// CSV rows (cell_i, cell_j, component_id) for every labeled cell.
std::string components_to_csv(const ComponentLabeling& labeling);

/// Minimal number of circular arcs covering `samples` equispaced points of
/// the circle of radius D, each arc assignable a single label in {S, U}.
/// Sample labels come from horizon-truncated membership in the stable (S) and
/// unstable (U) sets for V. Returns 0 when one label covers the whole circle.
/// Throws NeitherDetected if a sample escapes in both time directions.
int boundary_arc_decomposition(const GermSpec& spec, DiscRegion D, DiscRegion V,
                               std::int64_t horizon, int samples);

}  // namespace germlab
