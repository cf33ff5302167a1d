#include "qbill/spectral/hamiltonian.hpp"

#include <numbers>

#include "qbill/error.hpp"

namespace qbill::spectral {

namespace {

double mixed_derivative_bracket(long m1, long m2, long n1, long n2) {
    return interaction_integral(m1 + n2, m2 + n1) + interaction_integral(m1 + n2, m2 - n1) +
           interaction_integral(m1 - n2, m2 + n1) + interaction_integral(m1 - n2, m2 - n1) -
           interaction_integral(m1 + n1, m2 + n2) - interaction_integral(m1 + n1, m2 - n2) -
           interaction_integral(m1 - n1, m2 + n2) - interaction_integral(m1 - n1, m2 - n2);
}

}  // namespace

double matrix_element(const BasisIndex& row, const BasisIndex& col, MassRatio m) {
    if (row.cutoff != col.cutoff) {
        throw DomainError("matrix_element: basis functions from different cutoffs");
    }
    const double inv_kappa = m.inv_kappa();
    double value = 0.0;
    // The exchange delta (m1 == n2 && m2 == n1) never fires under strict ordering.
    if (row.n1 == col.n1 && row.n2 == col.n2) {
        value += 0.5 * (col.n1 * col.n1 + col.n2 * col.n2) * (1.0 + inv_kappa);
    }
    if (inv_kappa != 0.0 && (row.n1 + row.n2) % 2 == (col.n1 + col.n2) % 2) {
        constexpr double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
        value += static_cast<double>(col.n1) * col.n2 * inv_pi2 * inv_kappa *
                 mixed_derivative_bracket(row.n1, row.n2, col.n1, col.n2);
    }
    return value;
}

Eigen::MatrixXd assemble_hamiltonian(const PairBasis& basis, MassRatio m) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const auto& col = basis[static_cast<std::size_t>(j)];
        for (Eigen::Index i = 0; i <= j; ++i) {
            h(i, j) = matrix_element(basis[static_cast<std::size_t>(i)], col, m);
        }
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = j + 1; i < dim; ++i) {
            h(i, j) = h(j, i);
        }
    }
    return h;
}

}  // namespace qbill::spectral
