#include "qbill/spectral/eigen_solution.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <lapacke.h>

#include "qbill/error.hpp"
#include "qbill/spectral/hamiltonian.hpp"

namespace qbill::spectral {

std::span<const double> EigenSolution::state(std::size_t i) const {
    if (!has_coefficients()) {
        throw DomainError("eigen solution carries no coefficients");
    }
    if (i >= static_cast<std::size_t>(coefficients.rows())) {
        throw DomainError("state index " + std::to_string(i) + " out of range");
    }
    return {coefficients.row(static_cast<Eigen::Index>(i)).data(),
            static_cast<std::size_t>(coefficients.cols())};
}

std::vector<double> EigenSolution::sector_energies(int parity) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (parities[i] == parity) {
            out.push_back(energies[i]);
        }
    }
    return out;
}

namespace {

std::vector<int> basis_parities(int cutoff) {
    const PairBasis basis(cutoff);
    std::vector<int> out(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        out[i] = basis[i].parity();
    }
    return out;
}

int classify_parity(std::span<const double> coefficients, const std::vector<int>& parities) {
    if (coefficients.size() != parities.size()) {
        throw ShapeError("parity_of_state: coefficient length does not match the basis");
    }
    double even = 0.0;
    double odd = 0.0;
    for (std::size_t i = 0; i < parities.size(); ++i) {
        const double w = coefficients[i] * coefficients[i];
        (parities[i] > 0 ? even : odd) += w;
    }
    const double total = even + odd;
    constexpr double tol = 1e-8;
    if (even > (1.0 - tol) * total) {
        return +1;
    }
    if (odd > (1.0 - tol) * total) {
        return -1;
    }
    throw DomainError("state has mixed mirror parity (even weight " + std::to_string(even / total) +
                      ")");
}

}  // namespace

int parity_of_state(std::span<const double> coefficients, int cutoff) {
    return classify_parity(coefficients, basis_parities(cutoff));
}

namespace {

// Deterministic sign: the largest-magnitude component (first on ties) is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (v(k) < 0.0) {
        v = -v;
    }
}

struct Tagged {
    double energy;
    int parity;
    std::size_t source;  // 0 = a, 1 = b
    std::size_t index;   // position inside its source
};

}  // namespace

EigenSolution diagonalize(const Eigen::MatrixXd& h, const PairBasis& basis, MassRatio m,
                          bool with_coefficients, std::optional<std::size_t> max_states) {
    const auto n = static_cast<lapack_int>(h.rows());
    if (h.rows() != h.cols() || static_cast<std::size_t>(h.rows()) != basis.size()) {
        throw ShapeError("diagonalize: matrix does not match the basis dimension");
    }
    EigenSolution out;
    out.mass = m;
    out.cutoff = basis.cutoff();
    if (n == 0) {
        return out;
    }
    Eigen::MatrixXd a = h;
    Eigen::VectorXd w(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, with_coefficients ? 'V' : 'N', 'U', n,
                                           a.data(), n, w.data());
    if (info != 0) {
        throw SolverError("dsyevd failed with info = " + std::to_string(info));
    }
    const lapack_int keep =
        max_states ? std::min<lapack_int>(n, static_cast<lapack_int>(*max_states)) : n;
    out.energies.assign(w.data(), w.data() + keep);

    const PairBasis full(basis.cutoff());
    if (with_coefficients) {
        out.coefficients = CoefficientMatrix::Zero(keep, static_cast<Eigen::Index>(full.size()));
        std::vector<Eigen::Index> scatter(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            scatter[i] = static_cast<Eigen::Index>(*full.position(basis[i].n1, basis[i].n2));
        }
        for (Eigen::Index k = 0; k < keep; ++k) {
            fix_sign(a.col(k));
            for (Eigen::Index i = 0; i < n; ++i) {
                out.coefficients(k, scatter[static_cast<std::size_t>(i)]) = a(i, k);
            }
        }
        const auto parities = basis_parities(out.cutoff);
        out.parities.resize(static_cast<std::size_t>(keep));
        for (std::size_t k = 0; k < out.size(); ++k) {
            out.parities[k] = classify_parity(out.state(k), parities);
        }
    } else if (basis.parity()) {
        out.parities.assign(static_cast<std::size_t>(keep), *basis.parity());
    } else {
        throw DomainError("diagonalize: parities of a mixed block need coefficients");
    }
    return out;
}

EigenSolution merge(const EigenSolution& a, const EigenSolution& b) {
    if (a.cutoff != b.cutoff || a.mass != b.mass) {
        throw DomainError("merge: solutions belong to different (kappa, cutoff)");
    }
    if (a.has_coefficients() != b.has_coefficients()) {
        throw DomainError("merge: only one solution carries coefficients");
    }
    std::vector<Tagged> all;
    all.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        all.push_back({a.energies[i], a.parities[i], 0, i});
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        all.push_back({b.energies[i], b.parities[i], 1, i});
    }
    std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
        if (x.energy != y.energy) return x.energy < y.energy;
        if (x.parity != y.parity) return x.parity > y.parity;
        if (x.source != y.source) return x.source < y.source;
        return x.index < y.index;
    });

    EigenSolution out;
    out.mass = a.mass;
    out.cutoff = a.cutoff;
    out.energies.reserve(all.size());
    out.parities.reserve(all.size());
    if (a.has_coefficients()) {
        out.coefficients.resize(static_cast<Eigen::Index>(all.size()), a.coefficients.cols());
    }
    for (std::size_t k = 0; k < all.size(); ++k) {
        const auto& t = all[k];
        out.energies.push_back(t.energy);
        out.parities.push_back(t.parity);
        if (a.has_coefficients()) {
            const auto& src = t.source == 0 ? a : b;
            out.coefficients.row(static_cast<Eigen::Index>(k)) =
                src.coefficients.row(static_cast<Eigen::Index>(t.index));
        }
    }
    return out;
}

namespace {

EigenSolution truncate(EigenSolution s, std::size_t keep) {
    if (s.size() <= keep) {
        return s;
    }
    s.energies.resize(keep);
    s.parities.resize(keep);
    if (s.has_coefficients()) {
        s.coefficients.conservativeResize(static_cast<Eigen::Index>(keep), Eigen::NoChange);
    }
    return s;
}

// 1/kappa = 0: basis functions are the eigenstates, E = (n1^2 + n2^2) / 2.
EigenSolution solve_diagonal(const PairBasis& basis, bool with_coefficients) {
    std::vector<std::size_t> order(basis.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto energy = [&](std::size_t i) {
        return 0.5 * (basis[i].n1 * basis[i].n1 + basis[i].n2 * basis[i].n2);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return energy(x) < energy(y); });

    const PairBasis full(basis.cutoff());
    EigenSolution out;
    out.mass = MassRatio::infinite();
    out.cutoff = basis.cutoff();
    if (with_coefficients) {
        out.coefficients = CoefficientMatrix::Zero(static_cast<Eigen::Index>(order.size()),
                                                   static_cast<Eigen::Index>(full.size()));
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& b = basis[order[k]];
        out.energies.push_back(energy(order[k]));
        out.parities.push_back(b.parity());
        if (with_coefficients) {
            out.coefficients(static_cast<Eigen::Index>(k),
                             static_cast<Eigen::Index>(*full.position(b.n1, b.n2))) = 1.0;
        }
    }
    return out;
}

EigenSolution solve_block(MassRatio m, int cutoff, int parity, const SolveOptions& options) {
    const PairBasis basis(cutoff, parity);
    EigenSolution s = m.inv_kappa() == 0.0
                          ? solve_diagonal(basis, options.coefficients)
                          : diagonalize(assemble_hamiltonian(basis, m), basis, m,
                                        options.coefficients, options.max_states);
    if (options.max_states) {
        s = truncate(std::move(s), *options.max_states);
    }
    s.parity_block = parity;
    return s;
}

}  // namespace

EigenSolution solve(MassRatio m, int cutoff, const SolveOptions& options) {
    if (cutoff < 3) {
        throw DomainError("cutoff must be >= 3");
    }
    if (options.parity) {
        return solve_block(m, cutoff, *options.parity, options);
    }
    EigenSolution even = solve_block(m, cutoff, +1, options);
    EigenSolution odd = solve_block(m, cutoff, -1, options);
    EigenSolution merged = merge(even, odd);
    merged.parity_block = 0;
    if (options.max_states) {
        merged = truncate(std::move(merged), *options.max_states);
    }
    return merged;
}

}  // namespace qbill::spectral
