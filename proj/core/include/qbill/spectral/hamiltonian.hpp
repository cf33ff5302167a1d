#pragma once

#include <optional>

#include <Eigen/Dense>

#include "qbill/spectral/basis.hpp"
#include "qbill/spectral/mass_ratio.hpp"

namespace qbill::spectral {

/// I(s,t) = [(-1)^s - 1][(-1)^t - 1] / (s t) for s,t != 0, and 0 otherwise.
/// Nonzero (and then equal to 4/(s t)) only when both arguments are odd.
constexpr double interaction_integral(long s, long t) {
    if (s == 0 || t == 0 || s % 2 == 0 || t % 2 == 0) {
        return 0.0;
    }
    return 4.0 / (static_cast<double>(s) * static_cast<double>(t));
}

/// <xi_row| H_0 |xi_col> in units hbar = m = 1, L = pi.
///
/// H_0 = -1/2 (d1^2 + d2^2) - 1/(2 kappa) (d1 + d2)^2. The Laplacian part is
/// diagonal, (n1^2 + n2^2)(1 + 1/kappa)/2; the mixed derivative -d1 d2 / kappa
/// couples pairs of equal parity through eight I(s,t) terms.
double matrix_element(const BasisIndex& row, const BasisIndex& col, MassRatio m);

/// Dense symmetric Hamiltonian over `basis`. Only the upper triangle is
/// evaluated; the lower one is mirrored so the result is exactly symmetric.
Eigen::MatrixXd assemble_hamiltonian(const PairBasis& basis, MassRatio m);

inline Eigen::MatrixXd assemble_hamiltonian(int cutoff, MassRatio m,
                                            std::optional<int> parity_block = std::nullopt) {
    return assemble_hamiltonian(PairBasis(cutoff, parity_block), m);
}

}  // namespace qbill::spectral
