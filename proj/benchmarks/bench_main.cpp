#include <benchmark/benchmark.h>

#include <complex>

#include "germlab/components.hpp"
#include "germlab/orbit.hpp"
#include "germlab/raster.hpp"
#include "germlab/shorttrip.hpp"

using namespace germlab;

namespace {

void BM_EvaluateParabolic(benchmark::State& state) {
    GermSpec spec = make_parabolic(0, 1, static_cast<int>(state.range(0)));
    PlanePoint z{0.1, 0.07};
    for (auto _ : state) {
        z = evaluate(spec, z);
        if (std::abs(z) > 0.4) z = {0.1, 0.07};
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_EvaluateParabolic)->Arg(1)->Arg(3)->Arg(6);

void BM_EvaluateConjugated(benchmark::State& state) {
    GermSpec spec = make_conjugated(make_radial_power(2.0), make_parabolic(0, 1, 1));
    PlanePoint z{0.1, 0.07};
    for (auto _ : state) {
        z = evaluate(spec, z);
        if (std::abs(z) > 0.25) z = {0.1, 0.07};
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_EvaluateConjugated);

void BM_AdmissibleSegment(benchmark::State& state) {
    GermSpec spec = make_parabolic(0, 1, static_cast<int>(state.range(0)));
    DiscRegion V(0.5), W(0.5 * std::pow(2.0, -6));
    PlanePoint x{-0.3, 0.04};
    for (auto _ : state) {
        auto seg = longest_admissible_segment(spec, x, V, W, 100000);
        benchmark::DoNotOptimize(seg.value);
    }
}
BENCHMARK(BM_AdmissibleSegment)->Arg(1)->Arg(3)->Arg(6);

void BM_StableRaster(benchmark::State& state) {
    GermSpec spec = make_parabolic(0, 1, 2);
    DiscRegion V(0.5);
    for (auto _ : state) {
        GridRaster raster = estimate_stable_set(spec, V, 10000, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(raster.cells.data());
    }
}
BENCHMARK(BM_StableRaster)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_MeasureNW(benchmark::State& state) {
    GermSpec spec = make_parabolic(0, 1, 1);
    DiscRegion V(0.5), W(0.05);
    for (auto _ : state) {
        auto m = measure_N_W(spec, V, W, 2000, 100000, 42);
        benchmark::DoNotOptimize(m.n_hat);
    }
}
BENCHMARK(BM_MeasureNW)->Unit(benchmark::kMillisecond);

void BM_BoundaryArcs(benchmark::State& state) {
    GermSpec spec = make_parabolic(0, 1, 2);
    for (auto _ : state) {
        int arcs = boundary_arc_decomposition(spec, DiscRegion(0.15), DiscRegion(0.5), 10000, 512);
        benchmark::DoNotOptimize(arcs);
    }
}
BENCHMARK(BM_BoundaryArcs)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
