#include "germlab/raster.hpp"

#include <cmath>
#include <fstream>

#include "germlab/errors.hpp"
#include "germlab/parallel.hpp"

namespace germlab {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridRaster estimate_set(const GermSpec& spec, DiscRegion V, std::int64_t horizon, int resolution,
                        int direction) {
    if (resolution < 64 || !power_of_two(resolution))
        throw SpecError("resolution must be >= 64 and a power of two");
    if (horizon < 1) throw SpecError("horizon must be >= 1");

    GridRaster raster;
    raster.window_radius = V.radius;
    raster.resolution = resolution;
    raster.cells.assign(static_cast<std::size_t>(resolution) * resolution, CellLabel::OutOfSet);

    StayClassifier classifier(spec, V, horizon, direction);

    parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t row) {
        int iy = static_cast<int>(row);
        for (int ix = 0; ix < resolution; ++ix) {
            PlanePoint z =
                raster.is_origin_cell(ix, iy) ? PlanePoint{0.0, 0.0} : raster.cell_center(ix, iy);
            CellLabel label;
            switch (classifier.classify(z)) {
                case StayClassifier::Result::Leaves:
                    label = CellLabel::OutOfSet;
                    break;
                case StayClassifier::Result::Undetermined:
                    label = CellLabel::Undetermined;
                    break;
                default:
                    label = CellLabel::InSet;
                    break;
            }
            raster.at(ix, iy) = label;
        }
    });
    return raster;
}

}  // namespace

std::int64_t GridRaster::count(CellLabel label) const {
    std::int64_t n = 0;
    for (CellLabel c : cells)
        if (c == label) ++n;
    return n;
}

GridRaster estimate_stable_set(const GermSpec& spec, DiscRegion V, std::int64_t horizon,
                               int resolution) {
    return estimate_set(spec, V, horizon, resolution, +1);
}

GridRaster estimate_unstable_set(const GermSpec& spec, DiscRegion V, std::int64_t horizon,
                                 int resolution) {
    return estimate_set(spec, V, horizon, resolution, -1);
}

double raster_coverage(const GridRaster& raster, DiscRegion probe) {
    std::int64_t total = 0, in = 0;
    for (int iy = 0; iy < raster.resolution; ++iy)
        for (int ix = 0; ix < raster.resolution; ++ix) {
            PlanePoint z = raster.is_origin_cell(ix, iy) ? PlanePoint{0.0, 0.0}
                                                         : raster.cell_center(ix, iy);
            if (!probe.contains(z)) continue;
            ++total;
            if (raster.at(ix, iy) == CellLabel::InSet) ++in;
        }
    return total == 0 ? 0.0 : static_cast<double>(in) / static_cast<double>(total);
}

double union_coverage(const GridRaster& stable, const GridRaster& unstable, DiscRegion probe) {
    if (stable.resolution != unstable.resolution ||
        stable.window_radius != unstable.window_radius)
        throw SpecError("union_coverage requires matching rasters");
    std::int64_t total = 0, in = 0;
    for (int iy = 0; iy < stable.resolution; ++iy)
        for (int ix = 0; ix < stable.resolution; ++ix) {
            PlanePoint z = stable.is_origin_cell(ix, iy) ? PlanePoint{0.0, 0.0}
                                                         : stable.cell_center(ix, iy);
            if (!probe.contains(z)) continue;
            ++total;
            if (stable.at(ix, iy) == CellLabel::InSet || unstable.at(ix, iy) == CellLabel::InSet)
                ++in;
        }
    return total == 0 ? 0.0 : static_cast<double>(in) / static_cast<double>(total);
}

std::int64_t undetermined_count(const GridRaster& raster) {
    return raster.count(CellLabel::Undetermined);
}

std::string raster_to_pgm(const GridRaster& raster) {
    std::string out = "P5\n" + std::to_string(raster.resolution) + " " +
                      std::to_string(raster.resolution) + "\n255\n";
    out.reserve(out.size() + raster.cells.size());
    for (int iy = raster.resolution - 1; iy >= 0; --iy)
        for (int ix = 0; ix < raster.resolution; ++ix) {
            unsigned char byte;
            switch (raster.at(ix, iy)) {
                case CellLabel::InSet: byte = 255; break;
                case CellLabel::Undetermined: byte = 128; break;
                default: byte = 0; break;
            }
            out.push_back(static_cast<char>(byte));
        }
    return out;
}

void write_pgm(const GridRaster& raster, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    std::string bytes = raster_to_pgm(raster);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace germlab
