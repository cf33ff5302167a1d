#pragma once

#include <numbers>

#include "qbill/spectral/mass_ratio.hpp"

namespace qbill::spectral {

/// Asymptotic density of states dN/dE of the billiard for ring length L:
/// L^2 / (4 pi) * sqrt(kappa / (kappa + 2)).
double weyl_density(MassRatio m, double ring_length = std::numbers::pi);

struct TriangleAngles {
    double base = 0.0;  // radians, tan(base) = sqrt((kappa + 2) / kappa)
    double apex = 0.0;  // pi - 2 base
};

TriangleAngles triangle_geometry(MassRatio m);

}  // namespace qbill::spectral
