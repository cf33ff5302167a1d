#include <benchmark/benchmark.h>

#include <vector>

#include "qbill/imaging/rasterize.hpp"

using namespace qbill;

static void BM_Rasterize(benchmark::State& state) {
    const auto cutoff = static_cast<int>(state.range(0));
    const imaging::Rasterizer raster(cutoff, 64);
    std::vector<double> c(spectral::basis_dimension(cutoff));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 1.0 / static_cast<double>(i + 1);
    for (auto _ : state) {
        auto g = raster.image(c, imaging::GridKind::density);
        benchmark::DoNotOptimize(g.values.data());
    }
}
BENCHMARK(BM_Rasterize)->Arg(60)->Arg(130)->Unit(benchmark::kMicrosecond);
