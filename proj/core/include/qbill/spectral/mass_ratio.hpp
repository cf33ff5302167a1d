#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "qbill/error.hpp"

namespace qbill {

/// Impurity-to-fermion mass ratio kappa = m_I / m, stored as 1/kappa so the
/// infinitely heavy impurity (1/kappa = 0) is exact. Only 1/kappa in [0, 1]
/// is admitted: the impurity is never lighter than the fermions.
class MassRatio {
public:
    constexpr MassRatio() = default;

    static MassRatio from_inverse(double inv_kappa) {
        if (!(inv_kappa >= 0.0 && inv_kappa <= 1.0)) {
            throw DomainError("inverse mass ratio must lie in [0, 1], got " +
                              std::to_string(inv_kappa));
        }
        return MassRatio(inv_kappa);
    }

    static MassRatio from_kappa(double kappa) {
        if (!(kappa >= 1.0)) {
            throw DomainError("mass ratio kappa must be >= 1, got " + std::to_string(kappa));
        }
        return MassRatio(std::isinf(kappa) ? 0.0 : 1.0 / kappa);
    }

    static MassRatio infinite() { return MassRatio(0.0); }

    constexpr double inv_kappa() const { return inv_kappa_; }
    double kappa() const {
        return inv_kappa_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_kappa_;
    }

    /// Bethe-ansatz solvable points: the equilateral (kappa = 1) and right (1/kappa = 0) triangles.
    constexpr bool integrable() const { return inv_kappa_ == 0.0 || inv_kappa_ == 1.0; }

    friend constexpr bool operator==(MassRatio, MassRatio) = default;
    friend constexpr auto operator<=>(MassRatio a, MassRatio b) { return a.inv_kappa_ <=> b.inv_kappa_; }

private:
    constexpr explicit MassRatio(double inv) : inv_kappa_(inv) {}

    double inv_kappa_ = 1.0;
};

}  // namespace qbill
