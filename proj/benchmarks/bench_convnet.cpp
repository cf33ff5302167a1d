#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qbill/convnet/network.hpp"

using namespace qbill;
using convnet::Label;

namespace {

std::vector<imaging::PixelGrid> images(std::size_t count) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 0.2);
    std::vector<imaging::PixelGrid> out;
    for (std::size_t k = 0; k < count; ++k) {
        imaging::PixelGrid g(64, imaging::GridKind::density);
        for (double& v : g.values) v = u(rng);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

static void BM_Forward(benchmark::State& state) {
    const auto batch = static_cast<std::size_t>(state.range(0));
    const auto p = convnet::Parameters<float>::he_init(convnet::ArchitectureSpec{}, 1);
    const auto imgs = images(batch);
    std::vector<const imaging::PixelGrid*> ptrs;
    for (const auto& g : imgs) ptrs.push_back(&g);
    const auto x = convnet::pack_images<float>(ptrs, 64);
    for (auto _ : state) {
        auto z = convnet::logits(p, x);
        benchmark::DoNotOptimize(z.data());
    }
    state.SetItemsProcessed(static_cast<long>(state.iterations() * batch));
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_ForwardBackward(benchmark::State& state) {
    const auto batch = static_cast<std::size_t>(state.range(0));
    const auto p = convnet::Parameters<float>::he_init(convnet::ArchitectureSpec{}, 1);
    const auto imgs = images(batch);
    std::vector<const imaging::PixelGrid*> ptrs;
    for (const auto& g : imgs) ptrs.push_back(&g);
    const auto x = convnet::pack_images<float>(ptrs, 64);
    std::vector<Label> labels(batch, Label::integrable);
    auto grads = p;
    for (auto _ : state) {
        auto out = convnet::loss_and_gradient(p, x, labels, &grads);
        benchmark::DoNotOptimize(out.loss);
    }
    state.SetItemsProcessed(static_cast<long>(state.iterations() * batch));
}
BENCHMARK(BM_ForwardBackward)->Arg(32)->Unit(benchmark::kMillisecond);
