#include "qbill/stats/level_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qbill/error.hpp"

namespace qbill::stats {

std::vector<double> UnfoldedSpectrum::spacings() const {
    std::vector<double> s;
    if (levels.size() < 2) {
        return s;
    }
    s.reserve(levels.size() - 1);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        s.push_back(levels[i] - levels[i - 1]);
    }
    return s;
}

UnfoldedSpectrum unfold(std::span<const double> energies, int parity, double inv_kappa) {
    if (energies.size() < 2) {
        throw DomainError("unfold: need at least two levels");
    }
    if (!std::is_sorted(energies.begin(), energies.end())) {
        throw DomainError("unfold: levels must be sorted ascending");
    }
    const double mean = (energies.back() - energies.front()) / static_cast<double>(energies.size() - 1);
    if (!(mean > 0.0)) {
        throw DomainError("unfold: all levels coincide");
    }
    UnfoldedSpectrum u;
    u.parity = parity;
    u.inv_kappa = inv_kappa;
    u.mean_spacing = mean;
    u.levels.reserve(energies.size());
    for (double e : energies) {
        u.levels.push_back(e / mean);
    }
    return u;
}

std::size_t default_bin_count(std::size_t num_spacings) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(num_spacings))));
}

SpacingHistogram histogram(std::span<const double> samples, std::size_t num_bins, double lower,
                           double upper) {
    if (num_bins == 0) {
        throw DomainError("histogram: need at least one bin");
    }
    if (samples.empty()) {
        throw DomainError("histogram: no samples");
    }
    if (!(upper > lower)) {
        throw DomainError("histogram: empty range");
    }
    SpacingHistogram h;
    h.edges.resize(num_bins + 1);
    const double width = (upper - lower) / static_cast<double>(num_bins);
    for (std::size_t i = 0; i <= num_bins; ++i) {
        h.edges[i] = lower + width * static_cast<double>(i);
    }
    h.edges.back() = upper;
    h.counts.assign(num_bins, 0);
    std::size_t inside = 0;
    for (double s : samples) {
        if (s < lower) {
            continue;
        }
        if (s >= upper) {
            ++h.overflow;
            continue;
        }
        auto bin = static_cast<std::size_t>((s - lower) / width);
        bin = std::min(bin, num_bins - 1);
        ++h.counts[bin];
        ++inside;
    }
    if (inside == 0) {
        throw DomainError("histogram: every sample fell outside the binned range");
    }
    h.densities.resize(num_bins);
    for (std::size_t i = 0; i < num_bins; ++i) {
        h.densities[i] = static_cast<double>(h.counts[i]) /
                         (static_cast<double>(inside) * (h.edges[i + 1] - h.edges[i]));
    }
    return h;
}

SpacingHistogram spacing_histogram(const UnfoldedSpectrum& u, std::size_t num_bins, double upper) {
    const auto s = u.spacings();
    if (s.empty()) {
        throw DomainError("spacing_histogram: empty spectrum");
    }
    return histogram(s, num_bins, 0.0, upper);
}

double wigner_goe(double s) {
    constexpr double pi = std::numbers::pi;
    return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

double wigner_goe_cdf(double s) {
    return s <= 0.0 ? 0.0 : -std::expm1(-0.25 * std::numbers::pi * s * s);
}

double poisson(double s) { return std::exp(-s); }

double poisson_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); }

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw DomainError("ks_distance: no samples");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double delta_min(std::span<const double> energies, std::size_t n) {
    if (n < 2) {
        throw DomainError("delta_min: need N >= 2");
    }
    if (n > energies.size()) {
        throw DomainError("delta_min: N = " + std::to_string(n) + " exceeds " +
                          std::to_string(energies.size()) + " levels");
    }
    double best = energies[1] - energies[0];
    for (std::size_t i = 2; i < n; ++i) {
        best = std::min(best, energies[i] - energies[i - 1]);
    }
    return best;
}

std::vector<std::size_t> log_spaced_grid(std::size_t lo, std::size_t hi, std::size_t points) {
    if (lo < 1 || hi < lo || points < 1) {
        throw DomainError("log_spaced_grid needs 1 <= lo <= hi and points >= 1");
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < points; ++k) {
        const double t = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
        const auto n = static_cast<std::size_t>(std::lround(
            std::exp(std::log(static_cast<double>(lo)) * (1 - t) + std::log(static_cast<double>(hi)) * t)));
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    return out;
}

std::vector<double> delta_min_average(std::span<const std::vector<double>> spectra,
                                      std::span<const std::size_t> n_grid) {
    if (spectra.empty()) {
        throw DomainError("delta_min_average: no spectra");
    }
    std::vector<double> out;
    out.reserve(n_grid.size());
    for (std::size_t n : n_grid) {
        double sum = 0.0;
        for (const auto& e : spectra) {
            sum += delta_min(e, n);
        }
        out.push_back(sum / static_cast<double>(spectra.size()));
    }
    return out;
}

PowerLaw fit_power_law(std::span<const double> n, std::span<const double> values) {
    if (n.size() != values.size() || n.size() < 2) {
        throw DomainError("fit_power_law: need two or more (N, value) pairs of equal length");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(values[i] > 0.0) || !(n[i] > 0.0)) {
            throw DomainError("fit_power_law: values and abscissae must be positive");
        }
        const double x = std::log(n[i]);
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(n.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) {
        throw DomainError("fit_power_law: abscissae are all equal");
    }
    const double b = (m * sxy - sx * sy) / denom;
    const double log_a = (sy - b * sx) / m;
    return {std::exp(log_a), b};
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            r[idx[k]] = avg;
        }
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("spearman: need two or more paired samples");
    }
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace qbill::stats
