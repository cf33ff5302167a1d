#pragma once

#include <cstddef>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "qbill/imaging/pixel_grid.hpp"
#include "qbill/spectral/eigen_solution.hpp"

namespace qbill::imaging {

/// Evaluates expansions over the ordered-pair basis on a pixel grid. With
/// S(n, i) = sin(n pi z_i / L) and the antisymmetric coefficient matrix
/// A(n1, n2) = -A(n2, n1) = N c_{n1,n2}, the raster is psi = S^T A S.
class Rasterizer {
public:
    Rasterizer(int cutoff, int resolution, double length = std::numbers::pi);

    int cutoff() const { return cutoff_; }
    int resolution() const { return resolution_; }

    /// Raw (not re-normalized) psi values at pixel centres.
    PixelGrid wavefunction(std::span<const double> coefficients) const;

    /// Unit-normalized wavefunction (optionally) and, for density kind, its square.
    PixelGrid image(std::span<const double> coefficients, GridKind kind,
                    bool normalize_grid = true) const;

private:
    int cutoff_;
    int resolution_;
    double length_;
    spectral::PairBasis basis_;
    Eigen::MatrixXd sines_;  // (cutoff - 1) x resolution
};

/// Rasterizes state `index` of `solution`. The wavefunction is rescaled to
/// unit discrete norm when `normalize_grid` is set; density grids are the
/// square of that wavefunction.
PixelGrid rasterize(const spectral::EigenSolution& solution, std::size_t index, int resolution,
                    GridKind kind, bool normalize_grid = true);

/// A resolution of R pixels resolves the N-th state when R >= 2 sqrt(N).
bool resolves_state(int resolution, std::size_t state_number);

}  // namespace qbill::imaging
