#pragma once

#include <cstddef>
#include <numbers>

#include "qbill/imaging/pixel_grid.hpp"
#include "qbill/stats/level_statistics.hpp"

namespace qbill::imaging {

/// Density-normalized histogram of |psi| over [0, max |psi|].
stats::SpacingHistogram amplitude_histogram(const PixelGrid& psi, std::size_t num_bins);

/// Random-wave prediction for the amplitude distribution: a zero-mean
/// Gaussian whose width v = 1/L is fixed by unit normalization on [0, L]^2.
double gaussian_prediction(double psi, double length = std::numbers::pi);

/// KS distance between the pixel magnitudes |psi| and the magnitude of the
/// Gaussian prediction, i.e. the half-normal CDF erf(x / (v sqrt 2)).
double amplitude_ks_distance(const PixelGrid& psi);

}  // namespace qbill::imaging
