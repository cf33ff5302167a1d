#include <benchmark/benchmark.h>

#include "qbill/spectral/eigen_solution.hpp"
#include "qbill/spectral/hamiltonian.hpp"

using namespace qbill::spectral;
using qbill::MassRatio;

static void BM_AssembleHamiltonian(benchmark::State& state) {
    const auto cutoff = static_cast<int>(state.range(0));
    const PairBasis basis(cutoff);
    for (auto _ : state) {
        auto h = assemble_hamiltonian(basis, MassRatio::from_kappa(2.0));
        benchmark::DoNotOptimize(h.data());
    }
    state.counters["dim"] = static_cast<double>(basis_dimension(cutoff));
}
BENCHMARK(BM_AssembleHamiltonian)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
    const auto cutoff = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = solve(MassRatio::from_kappa(2.0), cutoff);
        benchmark::DoNotOptimize(s.energies.data());
    }
}
BENCHMARK(BM_Solve)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);
