#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qbill::spectral {

/// Antisymmetrized sine product xi_{n1,n2} with cutoff > n1 > n2 > 0.
struct BasisIndex {
    int n1 = 2;  // larger quantum number
    int n2 = 1;  // smaller quantum number
    int cutoff = 3;

    /// Mirror parity (-1)^(n1+n2) under z_i -> L - z_i.
    int parity() const { return (n1 + n2) % 2 == 0 ? +1 : -1; }

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Validates c > n1 > n2 > 0; throws DomainError otherwise.
BasisIndex make_basis_index(int n1, int n2, int cutoff);

/// Number of ordered pairs for a cutoff: (c-1)(c-2)/2.
std::size_t basis_dimension(int cutoff);

/// Gap-free enumeration of the ordered-pair basis, optionally restricted to
/// one mirror-parity block. Ordering: smaller quantum number outermost, then
/// the larger one ascending, i.e. (2,1), (3,1), ..., (c-1,1), (3,2), ...
class PairBasis {
public:
    explicit PairBasis(int cutoff, std::optional<int> parity = std::nullopt);

    int cutoff() const { return cutoff_; }
    std::optional<int> parity() const { return parity_; }
    std::size_t size() const { return pairs_.size(); }
    const BasisIndex& operator[](std::size_t i) const { return pairs_[i]; }
    const std::vector<BasisIndex>& pairs() const { return pairs_; }

    /// Position of a pair in this enumeration; nullopt if absent (e.g. wrong parity).
    std::optional<std::size_t> position(int n1, int n2) const;

private:
    int cutoff_;
    std::optional<int> parity_;
    std::vector<BasisIndex> pairs_;
    std::vector<std::ptrdiff_t> lookup_;  // (n2 * cutoff + n1) -> position, -1 if absent
};

// Closed-form pair <-> index maps in the form printed alongside the matrix
// elements. The first argument is the smaller quantum number. The index range
// has holes (n = c-1 is never produced), so these are kept as utilities and the
// solver uses PairBasis instead.

/// n = n_b - n_a + c(n_a - 1) - (n_a - 1) n_a / 2 for n_a < n_b < c.
long linear_index(int n_a, int n_b, int cutoff);

/// Inverse of linear_index; throws DomainError for n outside its image.
std::pair<int, int> inverse_index(long n, int cutoff);

}  // namespace qbill::spectral
