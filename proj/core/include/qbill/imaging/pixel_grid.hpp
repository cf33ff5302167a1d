#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace qbill::imaging {

enum class GridKind : std::uint8_t { wavefunction = 0, density = 1 };

/// Square raster over [0, L]^2 sampled at pixel centres z = (i + 1/2) L / R.
/// Row i follows z1, column j follows z2; storage is row-major.
struct PixelGrid {
    int resolution = 0;
    GridKind kind = GridKind::wavefunction;
    bool normalized = false;
    double length = std::numbers::pi;
    std::vector<double> values;

    PixelGrid() = default;
    PixelGrid(int r, GridKind k, double l = std::numbers::pi);

    double& at(int i, int j) { return values[static_cast<std::size_t>(i * resolution + j)]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i * resolution + j)]; }

    double pixel_area() const;
    /// Riemann sum of |psi|^2 (wavefunction) or of the values (density) times the pixel area.
    double norm() const;
};

/// Coordinate of pixel centre i for a grid of resolution r over [0, L].
double pixel_center(int i, int r, double length = std::numbers::pi);

/// Rescales so that norm() == 1. Throws DomainError for an all-zero grid.
PixelGrid normalize(PixelGrid g);

/// |psi|^2 of a wavefunction grid; stays normalized if the input was.
PixelGrid to_density(const PixelGrid& psi);

/// Pixel-wise alpha * values; clears the normalized flag unless alpha == 1.
PixelGrid scale_image(PixelGrid g, double alpha);

}  // namespace qbill::imaging
