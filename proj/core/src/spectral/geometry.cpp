#include "qbill/spectral/geometry.hpp"

#include <cmath>

#include "qbill/error.hpp"

namespace qbill::spectral {

double weyl_density(MassRatio m, double ring_length) {
    if (!(ring_length > 0.0)) {
        throw DomainError("weyl_density: ring length must be positive");
    }
    return ring_length * ring_length / (4.0 * std::numbers::pi) *
           std::sqrt(1.0 / (1.0 + 2.0 * m.inv_kappa()));
}

TriangleAngles triangle_geometry(MassRatio m) {
    // (kappa + 2) / kappa = 1 + 2 / kappa stays finite as 1/kappa -> 0.
    const double base = std::atan(std::sqrt(1.0 + 2.0 * m.inv_kappa()));
    return {base, std::numbers::pi - 2.0 * base};
}

}  // namespace qbill::spectral
