#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qbill/spectral/eigen_solution.hpp"

namespace qbill::spectral {

/// One equal-mass level: three distinct integers n1 < n2 < n3 with
/// sum(n) = branch in {0, -1, -2}. Shifting each by b/3 (b = -branch) gives
/// zero total momentum x_i = n_i + b/3, and with k_i = 2 pi x_i / L (L = pi)
/// the relative-motion energy is sum k_i^2 / 2 = 2 sum x_i^2.
struct BetheLevel {
    std::array<int, 3> triple{};
    int branch = 0;
    std::int64_t weight = 0;  // sum (3 n_i + b)^2; energy = 2 weight / 9

    double energy() const { return 2.0 * static_cast<double>(weight) / 9.0; }
};

struct BetheSpectrum {
    std::vector<BetheLevel> levels;

    std::size_t size() const { return levels.size(); }
    std::vector<double> energies() const;
};

/// Recomputes a level's energy from its stored triple and branch.
double bethe_level_energy(const std::array<int, 3>& triple, int branch);

/// Lowest `count` equal-mass (kappa = 1) levels with multiplicity, ascending.
/// The search radius grows until every level up to the cutoff energy is
/// provably enumerated; DomainError when `max_radius` is exhausted first.
BetheSpectrum bethe_energies(std::size_t count, int max_radius = 1 << 12);

struct AccuracyReport {
    std::vector<double> relative_error;  // (E_BA - E(c)) / E_BA per level
    std::size_t below_1e4 = 0;           // |eps| < 1e-4
    std::size_t below_1e3 = 0;           // |eps| < 1e-3
};

AccuracyReport benchmark_accuracy(std::span<const double> computed, const BetheSpectrum& bethe);

/// Requires a kappa = 1 solution and a Bethe spectrum of the same length.
AccuracyReport benchmark_accuracy(const EigenSolution& eig, const BetheSpectrum& bethe);

}  // namespace qbill::spectral
