#include "qbill/spectral/basis.hpp"

#include <cmath>
#include <string>

#include "qbill/error.hpp"

namespace qbill::spectral {

BasisIndex make_basis_index(int n1, int n2, int cutoff) {
    if (!(cutoff > n1 && n1 > n2 && n2 > 0)) {
        throw DomainError("basis index requires cutoff > n1 > n2 > 0, got (" + std::to_string(n1) +
                          ", " + std::to_string(n2) + ", c=" + std::to_string(cutoff) + ")");
    }
    return BasisIndex{n1, n2, cutoff};
}

std::size_t basis_dimension(int cutoff) {
    if (cutoff < 3) {
        throw DomainError("cutoff must be >= 3");
    }
    const auto c = static_cast<std::size_t>(cutoff);
    return (c - 1) * (c - 2) / 2;
}

PairBasis::PairBasis(int cutoff, std::optional<int> parity) : cutoff_(cutoff), parity_(parity) {
    if (cutoff < 3) {
        throw DomainError("cutoff must be >= 3");
    }
    if (parity && *parity != 1 && *parity != -1) {
        throw DomainError("parity block must be +1 or -1");
    }
    lookup_.assign(static_cast<std::size_t>(cutoff) * static_cast<std::size_t>(cutoff), -1);
    pairs_.reserve(parity ? basis_dimension(cutoff) / 2 + 1 : basis_dimension(cutoff));
    for (int small = 1; small < cutoff; ++small) {
        for (int large = small + 1; large < cutoff; ++large) {
            BasisIndex b{large, small, cutoff};
            if (parity && b.parity() != *parity) {
                continue;
            }
            lookup_[static_cast<std::size_t>(small * cutoff + large)] =
                static_cast<std::ptrdiff_t>(pairs_.size());
            pairs_.push_back(b);
        }
    }
}

std::optional<std::size_t> PairBasis::position(int n1, int n2) const {
    if (!(cutoff_ > n1 && n1 > n2 && n2 > 0)) {
        return std::nullopt;
    }
    const auto p = lookup_[static_cast<std::size_t>(n2 * cutoff_ + n1)];
    if (p < 0) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(p);
}

long linear_index(int n_a, int n_b, int cutoff) {
    if (cutoff < 3) {
        throw DomainError("cutoff must be >= 3");
    }
    if (!(0 < n_a && n_a < n_b && n_b < cutoff)) {
        throw DomainError("linear_index requires 0 < n_a < n_b < c");
    }
    const long a = n_a;
    const long b = n_b;
    const long c = cutoff;
    return b - a + c * (a - 1) - (a - 1) * a / 2;
}

std::pair<int, int> inverse_index(long n, int cutoff) {
    if (cutoff < 3) {
        throw DomainError("cutoff must be >= 3");
    }
    const long last = linear_index(cutoff - 2, cutoff - 1, cutoff);
    if (n < 1 || n > last) {
        throw DomainError("linear index " + std::to_string(n) + " outside [1, " +
                          std::to_string(last) + "]");
    }
    const double c = cutoff;
    const double root = std::sqrt(c * c - c - 2.0 * static_cast<double>(n) + 2.25);
    // Run starts land on exact half-integers; the nudge absorbs rounding below them.
    const long n_a = static_cast<long>(std::floor((1.0 + 2.0 * c) / 2.0 - root + 1e-9));
    const long n_b = n + n_a - static_cast<long>(cutoff) * (n_a - 1) + (n_a - 1) * n_a / 2;
    if (!(0 < n_a && n_a < n_b && n_b < cutoff)) {
        throw DomainError("linear index " + std::to_string(n) + " is not produced by any pair at c=" +
                          std::to_string(cutoff));
    }
    return {static_cast<int>(n_a), static_cast<int>(n_b)};
}

}  // namespace qbill::spectral
