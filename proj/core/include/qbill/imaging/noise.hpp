#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qbill/imaging/pixel_grid.hpp"

namespace qbill::imaging {

/// Gaussian field on an R x R raster that transforms with fixed signs under
/// the transpose (i,j)->(j,i) and the double reflection (i,j)->(R-1-i,R-1-j).
/// One N(0, sigma^2) draw per orbit of the four-element group is copied onto
/// the orbit with the requested signs, so every pixel keeps standard
/// deviation sigma (pixels forced to zero by an odd character excepted).
/// sigma == 0 yields the zero field without consuming random numbers.
PixelGrid symmetric_field(int resolution, double sigma, int transpose_sign, int mirror_sign,
                          std::mt19937_64& rng);

/// Mirror parity of a wavefunction raster: sign of sum psi(i,j) psi(R-1-i,R-1-j).
int grid_mirror_parity(const PixelGrid& psi);

/// psi~ = a psi (1 + r) with r even under both symmetries, so psi~ keeps the
/// fermionic antisymmetry, the mirror parity and the nodal lines of psi.
/// Returns the unit-normalized wavefunction.
PixelGrid multiplicative_noise(const PixelGrid& psi, double sigma, std::uint64_t seed);

/// psi- = a (psi + G r) with psi first brought to unit norm and r sharing its
/// symmetry class (antisymmetric under transpose, same mirror parity).
/// Unit-normalized.
PixelGrid additive_noise(const PixelGrid& psi, double sigma, double weight, std::uint64_t seed);

enum class RandomDistribution { gaussian, laplace, uniform };

RandomDistribution parse_distribution(std::string_view name);
std::string_view to_string(RandomDistribution d);

/// Density |psi|^2 of a random state whose amplitudes are i.i.d. draws, with
/// exactly round(zero_fraction R^2) pixels set to zero, normalized so that
/// sum(values) * (L/R)^2 = 1.
PixelGrid random_image(int resolution, double zero_fraction, RandomDistribution distribution,
                       std::uint64_t seed);

}  // namespace qbill::imaging
