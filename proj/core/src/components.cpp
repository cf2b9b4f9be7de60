#include "germlab/components.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "germlab/errors.hpp"
#include "germlab/parallel.hpp"

namespace germlab {

namespace {

struct Grid {
    int res;
    std::vector<unsigned char> in;  // 1 = intersection InSet

    bool at(int ix, int iy) const {
        return in[static_cast<std::size_t>(iy) * res + ix] != 0;
    }
};

// Largest K such that every cell-ring 1..K around the origin cell is fully
// InSet; ring k holds the cells whose center distance (in cell units) lies in
// [k, k+1).
int merged_core_ring(const Grid& g, int oi) {
    int res = g.res;
    int max_ring = res / 2 - 2;
    std::vector<char> ring_full(static_cast<std::size_t>(max_ring) + 1, 1);
    for (int iy = 0; iy < res; ++iy) {
        for (int ix = 0; ix < res; ++ix) {
            double dx = ix - oi, dy = iy - oi;
            double dist = std::sqrt(dx * dx + dy * dy);
            int ring = static_cast<int>(dist);
            if (ring < 1 || ring > max_ring) continue;
            if (!g.at(ix, iy)) ring_full[static_cast<std::size_t>(ring)] = 0;
        }
    }
    int k = 0;
    while (k + 1 <= max_ring && ring_full[static_cast<std::size_t>(k + 1)]) ++k;
    return k;
}

}  // namespace

int ComponentLabeling::origin_touching_count() const {
    int n = 0;
    for (const auto& c : components)
        if (c.touches_origin_ring) ++n;
    return n;
}

namespace {

// Flood-fill labeling with cells inside radius `core` (cell units) excluded.
void label_with_core(const Grid& g, int oi, int core, ComponentLabeling& out) {
    const int res = g.res;
    out.core_ring = core;
    out.component_id.assign(static_cast<std::size_t>(res) * res, 0);
    out.components.clear();

    auto excluded = [&](int ix, int iy) {
        if (ix == oi && iy == oi) return true;
        if (core == 0) return false;
        double dx = ix - oi, dy = iy - oi;
        return dx * dx + dy * dy <
               static_cast<double>(core + 1) * static_cast<double>(core + 1);
    };
    const double ring_edge = core == 0 ? 1.9 : core + 2.5;

    std::vector<std::pair<int, int>> stack;
    int next_id = 0;
    for (int iy = 0; iy < res; ++iy) {
        for (int ix = 0; ix < res; ++ix) {
            if (!g.at(ix, iy) || excluded(ix, iy)) continue;
            if (out.component_id[static_cast<std::size_t>(iy) * res + ix] != 0) continue;
            ++next_id;
            ComponentInfo info;
            info.id = next_id;
            info.min_ix = info.max_ix = ix;
            info.min_iy = info.max_iy = iy;
            stack.clear();
            stack.emplace_back(ix, iy);
            out.component_id[static_cast<std::size_t>(iy) * res + ix] = next_id;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++info.cell_count;
                info.min_ix = std::min(info.min_ix, cx);
                info.max_ix = std::max(info.max_ix, cx);
                info.min_iy = std::min(info.min_iy, cy);
                info.max_iy = std::max(info.max_iy, cy);
                double dx = cx - oi, dy = cy - oi;
                if (dx * dx + dy * dy < ring_edge * ring_edge) info.touches_origin_ring = true;
                for (int ny = cy - 1; ny <= cy + 1; ++ny) {
                    for (int nx = cx - 1; nx <= cx + 1; ++nx) {
                        if (nx < 0 || ny < 0 || nx >= res || ny >= res) continue;
                        if (!g.at(nx, ny) || excluded(nx, ny)) continue;
                        auto& slot = out.component_id[static_cast<std::size_t>(ny) * res + nx];
                        if (slot != 0) continue;
                        slot = next_id;
                        stack.emplace_back(nx, ny);
                    }
                }
            }
            out.components.push_back(info);
        }
    }
    out.component_count = next_id;
}

}  // namespace

ComponentLabeling component_analysis(const GridRaster& stable, const GridRaster& unstable) {
    if (stable.resolution != unstable.resolution ||
        stable.window_radius != unstable.window_radius)
        throw SpecError("component_analysis requires matching window and resolution");

    const int res = stable.resolution;
    const int oi = stable.origin_index();

    Grid g{res, std::vector<unsigned char>(static_cast<std::size_t>(res) * res, 0)};
    for (int iy = 0; iy < res; ++iy)
        for (int ix = 0; ix < res; ++ix)
            g.in[static_cast<std::size_t>(iy) * res + ix] =
                stable.at(ix, iy) == CellLabel::InSet && unstable.at(ix, iy) == CellLabel::InSet
                    ? 1
                    : 0;

    ComponentLabeling out;
    out.resolution = res;
    out.window_radius = stable.window_radius;

    // The separating channels between intersection components pinch toward 0
    // below cell size, merging everything near the origin. Scan a ladder of
    // core-exclusion radii starting at the solid all-InSet core and keep the
    // labeling that exposes the most ring-touching components (merging only
    // ever undercounts; over-exclusion deletes them entirely).
    int k0 = merged_core_ring(g, oi);
    std::vector<int> ladder;
    ladder.push_back(k0);
    for (int k = std::max(2, k0); k <= res / 3;
         k = std::max(k + 2, static_cast<int>(k * 1.4)))
        if (k > k0) ladder.push_back(k);

    ComponentLabeling best;
    int best_count = -1;
    for (int core : ladder) {
        ComponentLabeling trial;
        trial.resolution = res;
        trial.window_radius = stable.window_radius;
        label_with_core(g, oi, core, trial);
        int touching = trial.origin_touching_count();
        if (touching > best_count) {
            best_count = touching;
            best = std::move(trial);
        }
    }
    out = std::move(best);

    // Hole proxy: 4-connected background regions that do not reach the window
    // border, assigned to each component whose bounding box encloses them.
    std::vector<int> bg_id(static_cast<std::size_t>(res) * res, 0);
    struct BgRegion {
        int min_ix, min_iy, max_ix, max_iy;
        bool touches_border;
    };
    std::vector<BgRegion> regions;
    std::vector<std::pair<int, int>> stack;
    int bg_next = 0;
    for (int iy = 0; iy < res; ++iy) {
        for (int ix = 0; ix < res; ++ix) {
            std::size_t idx = static_cast<std::size_t>(iy) * res + ix;
            if (out.component_id[idx] != 0 || bg_id[idx] != 0) continue;
            ++bg_next;
            BgRegion reg{ix, iy, ix, iy, false};
            stack.clear();
            stack.emplace_back(ix, iy);
            bg_id[idx] = bg_next;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                reg.min_ix = std::min(reg.min_ix, cx);
                reg.max_ix = std::max(reg.max_ix, cx);
                reg.min_iy = std::min(reg.min_iy, cy);
                reg.max_iy = std::max(reg.max_iy, cy);
                if (cx == 0 || cy == 0 || cx == res - 1 || cy == res - 1)
                    reg.touches_border = true;
                constexpr int dx4[4] = {1, -1, 0, 0};
                constexpr int dy4[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int nx = cx + dx4[d], ny = cy + dy4[d];
                    if (nx < 0 || ny < 0 || nx >= res || ny >= res) continue;
                    std::size_t nidx = static_cast<std::size_t>(ny) * res + nx;
                    if (out.component_id[nidx] != 0 || bg_id[nidx] != 0) continue;
                    bg_id[nidx] = bg_next;
                    stack.emplace_back(nx, ny);
                }
            }
            regions.push_back(reg);
        }
    }
    for (const BgRegion& reg : regions) {
        if (reg.touches_border) continue;
        for (auto& comp : out.components) {
            if (reg.min_ix > comp.min_ix && reg.max_ix < comp.max_ix &&
                reg.min_iy > comp.min_iy && reg.max_iy < comp.max_iy)
                ++comp.hole_count;
        }
    }
    return out;
}

std::string components_to_csv(const ComponentLabeling& labeling) {
    std::ostringstream out;
    out << "cell_i,cell_j,component_id\n";
    int res = labeling.resolution;
    for (int iy = 0; iy < res; ++iy)
        for (int ix = 0; ix < res; ++ix) {
            int id = labeling.id_at(ix, iy);
            if (id != 0) out << ix << "," << iy << "," << id << "\n";
        }
    return out.str();
}

int boundary_arc_decomposition(const GermSpec& spec, DiscRegion D, DiscRegion V,
                               std::int64_t horizon, int samples) {
    if (!(D.radius < V.radius)) throw BadRegions("D must be strictly inside V");
    if (samples < 256) throw SpecError("boundary_arc_decomposition requires samples >= 256");

    StayClassifier forward(spec, V, horizon, +1);
    StayClassifier backward(spec, V, horizon, -1);

    // label per sample: 0 = S-only, 1 = U-only, 2 = both
    std::vector<int> labels(static_cast<std::size_t>(samples));
    std::vector<unsigned char> neither(static_cast<std::size_t>(samples), 0);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t k) {
        double theta = static_cast<double>(k) / static_cast<double>(samples);
        PlanePoint z = D.radius * unit_phase(theta);
        auto fwd = forward.classify(z);
        auto bwd = backward.classify(z);
        // Undetermined cannot certify escape; treat as membership.
        bool s = fwd != StayClassifier::Result::Leaves;
        bool u = bwd != StayClassifier::Result::Leaves;
        if (!s && !u) {
            neither[k] = 1;
            return;
        }
        labels[k] = s && u ? 2 : (s ? 0 : 1);
    });
    for (unsigned char n : neither)
        if (n)
            throw NeitherDetected(
                "boundary sample in neither stable nor unstable set (D too large or horizon too "
                "small)");

    // forced samples only; Both samples extend whichever arc is open
    std::vector<int> forced;
    for (int lab : labels)
        if (lab != 2) forced.push_back(lab);
    if (forced.empty()) return 0;
    bool has_s = false, has_u = false;
    for (int lab : forced) (lab == 0 ? has_s : has_u) = true;
    if (!has_s || !has_u) return 0;

    int runs = 0;
    int n = static_cast<int>(forced.size());
    for (int i = 0; i < n; ++i)
        if (forced[i] != forced[(i + 1) % n]) ++runs;
    return runs;
}

}  // namespace germlab
