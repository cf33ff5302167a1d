#pragma once

#include <numbers>
#include <vector>

#include "qbill/imaging/pixel_grid.hpp"

namespace qbill::imaging {

struct BosonicPair {
    int k1 = 1;
    int k2 = 1;
    double energy() const { return 0.5 * (k1 * k1 + k2 * k2); }
};

/// Psi_B = (N/L)[sin(k1 z1) sin(k2 z2) + sin(k2 z1) sin(k1 z2)] with N = 1
/// for k1 == k2 and sqrt(2) otherwise, at pixel centres (wavefunction kind,
/// not re-normalized).
PixelGrid bosonic_state(int k1, int k2, int resolution, double length = std::numbers::pi);

/// Bosonic (k1 <= k2) pairs ordered by energy, ties broken by k1; entries
/// [first, first + count) of that sequence.
std::vector<BosonicPair> bosonic_pairs(std::size_t first, std::size_t count);

}  // namespace qbill::imaging
