#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qbill::stats {

/// Levels rescaled to unit mean nearest-neighbour spacing.
struct UnfoldedSpectrum {
    std::vector<double> levels;
    int parity = 0;           // source sector, 0 when mixed or unknown
    double inv_kappa = -1.0;  // source mass ratio, negative when unknown
    double mean_spacing = 1.0;

    std::vector<double> spacings() const;
};

/// Divides every level by the mean consecutive gap (E_last - E_first) / (n - 1).
UnfoldedSpectrum unfold(std::span<const double> energies, int parity = 0, double inv_kappa = -1.0);

struct SpacingHistogram {
    std::vector<double> edges;       // num_bins + 1
    std::vector<std::size_t> counts;
    std::vector<double> densities;   // normalized over the in-range samples
    std::size_t overflow = 0;        // samples at or beyond the last edge

    std::size_t num_bins() const { return counts.size(); }
};

/// Default bin count: round(sqrt(number of spacings)), at least 1.
std::size_t default_bin_count(std::size_t num_spacings);

/// Histogram of unfolded nearest-neighbour spacings on [0, upper).
SpacingHistogram spacing_histogram(const UnfoldedSpectrum& u, std::size_t num_bins,
                                   double upper = 4.0);

/// Density-normalized histogram of arbitrary samples on [lower, upper).
SpacingHistogram histogram(std::span<const double> samples, std::size_t num_bins, double lower,
                           double upper);

/// Wigner surmise (pi s / 2) exp(-pi s^2 / 4).
double wigner_goe(double s);
double wigner_goe_cdf(double s);
double poisson(double s);
double poisson_cdf(double s);

/// Kolmogorov-Smirnov distance sup |F_empirical - F| of a sample against a CDF.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Smallest consecutive gap among the first n levels (n >= 2).
double delta_min(std::span<const double> energies, std::size_t n);

/// Roughly log-spaced increasing integers on [lo, hi]; duplicates dropped.
std::vector<std::size_t> log_spaced_grid(std::size_t lo, std::size_t hi, std::size_t points);

/// Arithmetic mean over spectra of delta_min(n) for every n in the grid.
std::vector<double> delta_min_average(std::span<const std::vector<double>> spectra,
                                      std::span<const std::size_t> n_grid);

struct PowerLaw {
    double amplitude = 0.0;
    double exponent = 0.0;
};

/// Least-squares fit of log(value) = log(a) + b log(n).
PowerLaw fit_power_law(std::span<const double> n, std::span<const double> values);

/// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace qbill::stats
