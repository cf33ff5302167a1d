#include "qbill/imaging/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qbill/error.hpp"

namespace qbill::imaging {

namespace {

std::vector<double> magnitudes(const PixelGrid& psi) {
    if (psi.kind != GridKind::wavefunction) {
        throw DomainError("amplitude statistics need a wavefunction grid");
    }
    if (psi.values.empty()) {
        throw DomainError("amplitude statistics of an empty grid");
    }
    std::vector<double> out;
    out.reserve(psi.values.size());
    for (double v : psi.values) {
        out.push_back(std::abs(v));
    }
    return out;
}

}  // namespace

stats::SpacingHistogram amplitude_histogram(const PixelGrid& psi, std::size_t num_bins) {
    const auto mags = magnitudes(psi);
    const double top = *std::max_element(mags.begin(), mags.end());
    // Nudge the upper edge so the largest magnitude lands inside the last bin.
    const double upper = top > 0.0 ? std::nextafter(top, 2.0 * top + 1.0) : 1.0;
    return stats::histogram(mags, num_bins, 0.0, upper);
}

double gaussian_prediction(double psi, double length) {
    if (!(length > 0.0)) {
        throw DomainError("gaussian_prediction: length must be positive");
    }
    const double v = 1.0 / length;
    return std::exp(-psi * psi / (2.0 * v * v)) / (std::sqrt(2.0 * std::numbers::pi) * v);
}

double amplitude_ks_distance(const PixelGrid& psi) {
    const auto mags = magnitudes(psi);
    const double v = 1.0 / psi.length;
    return stats::ks_distance(mags, [v](double x) {
        return x <= 0.0 ? 0.0 : std::erf(x / (v * std::sqrt(2.0)));
    });
}

}  // namespace qbill::imaging
