#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "germlab/disc.hpp"
#include "germlab/germ.hpp"
#include "germlab/orbit.hpp"

namespace germlab {

enum class CellLabel : unsigned char {
    OutOfSet = 0,
    Undetermined = 1,
    InSet = 2,
};

/// Boolean/label raster over the square window [-R, R]^2, cell (ix, iy)
/// representing the center of a square of side 2R/resolution. The cell whose
/// index is (resolution/2, resolution/2) hosts the fixed point and is
/// evaluated at z = 0 exactly.
struct GridRaster {
    double window_radius = 0.0;
    int resolution = 0;
    std::vector<CellLabel> cells;  // row-major: iy * resolution + ix

    CellLabel at(int ix, int iy) const {
        return cells[static_cast<std::size_t>(iy) * resolution + ix];
    }
    CellLabel& at(int ix, int iy) {
        return cells[static_cast<std::size_t>(iy) * resolution + ix];
    }

    double cell_size() const { return 2.0 * window_radius / resolution; }

    PlanePoint cell_center(int ix, int iy) const {
        double d = cell_size();
        return {-window_radius + (ix + 0.5) * d, -window_radius + (iy + 0.5) * d};
    }

    int origin_index() const { return resolution / 2; }
    bool is_origin_cell(int ix, int iy) const {
        return ix == origin_index() && iy == origin_index();
    }

    std::int64_t count(CellLabel label) const;
};

/// Finite-horizon estimate of W^s(V): a cell is InSet iff its center lies in
/// V and the first `horizon` forward iterates all stay in V.
GridRaster estimate_stable_set(const GermSpec& spec, DiscRegion V, std::int64_t horizon,
                               int resolution);

/// Same for W^u(V), iterating the inverse map. Backward steps that fail to
/// converge mark the cell Undetermined.
GridRaster estimate_unstable_set(const GermSpec& spec, DiscRegion V, std::int64_t horizon,
                                 int resolution);

/// Fraction of cells with center in `probe` that are InSet.
double raster_coverage(const GridRaster& raster, DiscRegion probe);

/// Fraction of cells with center in `probe` that are InSet in either raster.
double union_coverage(const GridRaster& stable, const GridRaster& unstable, DiscRegion probe);

std::int64_t undetermined_count(const GridRaster& raster);

/// Binary PGM (P5), maxval 255: InSet = 255, OutOfSet = 0, Undetermined = 128.
/// Rows are written top (largest Im) first.
std::string raster_to_pgm(const GridRaster& raster);
void write_pgm(const GridRaster& raster, const std::string& path);

}  // namespace germlab
