#include "qbill/imaging/pixel_grid.hpp"

#include <cmath>

#include "qbill/error.hpp"

namespace qbill::imaging {

PixelGrid::PixelGrid(int r, GridKind k, double l) : resolution(r), kind(k), length(l) {
    if (r < 1) {
        throw DomainError("pixel grid resolution must be positive");
    }
    values.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 0.0);
}

double PixelGrid::pixel_area() const {
    const double h = length / resolution;
    return h * h;
}

double PixelGrid::norm() const {
    double s = 0.0;
    if (kind == GridKind::density) {
        for (double v : values) s += v;
    } else {
        for (double v : values) s += v * v;
    }
    return s * pixel_area();
}

double pixel_center(int i, int r, double length) {
    return (i + 0.5) * length / r;
}

PixelGrid normalize(PixelGrid g) {
    const double n = g.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("cannot normalize a grid with zero or non-finite norm");
    }
    const double scale = g.kind == GridKind::density ? 1.0 / n : 1.0 / std::sqrt(n);
    for (double& v : g.values) {
        v *= scale;
    }
    g.normalized = true;
    return g;
}

PixelGrid to_density(const PixelGrid& psi) {
    if (psi.kind != GridKind::wavefunction) {
        throw DomainError("to_density expects a wavefunction grid");
    }
    PixelGrid d = psi;
    d.kind = GridKind::density;
    for (double& v : d.values) {
        v *= v;
    }
    return d;
}

PixelGrid scale_image(PixelGrid g, double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("scale factor must be positive");
    }
    for (double& v : g.values) {
        v *= alpha;
    }
    if (alpha != 1.0) {
        g.normalized = false;
    }
    return g;
}

}  // namespace qbill::imaging
