#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qbill/spectral/basis.hpp"
#include "qbill/spectral/mass_ratio.hpp"

namespace qbill::spectral {

using CoefficientMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Eigenstates of H_0 for one (kappa, cutoff). Energies ascend; each row of
/// `coefficients` is a unit-norm state expanded over the full ordered-pair
/// basis (PairBasis(cutoff) order). Coefficients may be absent when only the
/// spectrum was requested.
struct EigenSolution {
    MassRatio mass;
    int cutoff = 0;
    int parity_block = 0;  // 0 = both blocks merged, else the single block solved
    std::vector<double> energies;
    std::vector<int> parities;
    CoefficientMatrix coefficients;

    std::size_t size() const { return energies.size(); }
    std::size_t basis_dim() const { return basis_dimension(cutoff); }
    bool has_coefficients() const { return coefficients.rows() > 0; }
    std::span<const double> state(std::size_t i) const;

    /// Energies of one parity sector, ascending.
    std::vector<double> sector_energies(int parity) const;
};

struct SolveOptions {
    bool coefficients = false;
    /// Keep only the lowest `max_states` merged levels (all when unset).
    std::optional<std::size_t> max_states;
    /// Solve a single parity block instead of both.
    std::optional<int> parity;
};

/// Mirror parity of a normalized state: +1 when the weight on even (n1+n2)
/// basis functions exceeds 1 - 1e-8, -1 when the odd weight does. Mixed
/// support means the blocks leaked and raises DomainError.
int parity_of_state(std::span<const double> coefficients, int cutoff);

/// Dense symmetric eigendecomposition of `h`, whose rows/columns follow
/// `basis`. Coefficients are scattered into the full ordered-pair basis.
/// `max_states` keeps only the lowest levels.
EigenSolution diagonalize(const Eigen::MatrixXd& h, const PairBasis& basis, MassRatio m,
                          bool with_coefficients = true,
                          std::optional<std::size_t> max_states = std::nullopt);

/// Merges two solutions of the same (kappa, cutoff) by energy. Exact ties put
/// parity +1 first and then keep each input's internal order.
EigenSolution merge(const EigenSolution& a, const EigenSolution& b);

/// Builds and solves both parity blocks (or one, per options) and merges them.
/// 1/kappa = 0 takes the diagonal path without calling the eigensolver.
EigenSolution solve(MassRatio m, int cutoff, const SolveOptions& options = {});

}  // namespace qbill::spectral
