#include "qbill/imaging/rasterize.hpp"

#include <cmath>

#include "qbill/error.hpp"

namespace qbill::imaging {

Rasterizer::Rasterizer(int cutoff, int resolution, double length)
    : cutoff_(cutoff), resolution_(resolution), length_(length), basis_(cutoff) {
    if (resolution < 2) {
        throw DomainError("rasterizer needs resolution >= 2");
    }
    sines_.resize(cutoff - 1, resolution);
    for (int n = 1; n < cutoff; ++n) {
        for (int i = 0; i < resolution; ++i) {
            sines_(n - 1, i) =
                std::sin(n * std::numbers::pi * pixel_center(i, resolution, length) / length);
        }
    }
}

PixelGrid Rasterizer::wavefunction(std::span<const double> coefficients) const {
    const auto& basis = basis_;
    if (coefficients.size() != basis.size()) {
        throw ShapeError("rasterize: coefficient vector does not match the basis");
    }
    const double norm = std::sqrt(2.0) / length_;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff_ - 1, cutoff_ - 1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& b = basis[k];
        const double v = norm * coefficients[k];
        a(b.n1 - 1, b.n2 - 1) = v;
        a(b.n2 - 1, b.n1 - 1) = -v;
    }
    const Eigen::MatrixXd psi = sines_.transpose() * a * sines_;

    PixelGrid g(resolution_, GridKind::wavefunction, length_);
    // the product is antisymmetric only up to rounding; enforce it so the
    // diagonal nodal line is exactly zero
    for (int i = 0; i < resolution_; ++i) {
        g.at(i, i) = 0.0;
        for (int j = i + 1; j < resolution_; ++j) {
            const double v = 0.5 * (psi(i, j) - psi(j, i));
            g.at(i, j) = v;
            g.at(j, i) = -v;
        }
    }
    return g;
}

PixelGrid Rasterizer::image(std::span<const double> coefficients, GridKind kind,
                            bool normalize_grid) const {
    PixelGrid psi = wavefunction(coefficients);
    if (normalize_grid) {
        psi = normalize(std::move(psi));
    }
    return kind == GridKind::density ? to_density(psi) : psi;
}

PixelGrid rasterize(const spectral::EigenSolution& solution, std::size_t index, int resolution,
                    GridKind kind, bool normalize_grid) {
    if (!solution.has_coefficients()) {
        throw DomainError("rasterize: eigen solution carries no coefficients");
    }
    if (index >= solution.size()) {
        throw DomainError("rasterize: state index out of range");
    }
    return Rasterizer(solution.cutoff, resolution).image(solution.state(index), kind, normalize_grid);
}

bool resolves_state(int resolution, std::size_t state_number) {
    return static_cast<double>(resolution) >= 2.0 * std::sqrt(static_cast<double>(state_number));
}

}  // namespace qbill::imaging
