#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qbill/stats/level_statistics.hpp"

namespace qbill::stats {

/// Fixed-precision rendering shared by every CSV emitter.
std::string format_number(double v);

/// Joins header and rows into CSV text ("a,b,c\n...").
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

/// bin_left,bin_right,density[,p_goe,p_poisson]; reference columns are
/// evaluated at bin centres.
std::string spacing_histogram_csv(const SpacingHistogram& h, bool with_reference = false);

/// N,delta_min
std::string delta_min_csv(std::span<const std::size_t> n, std::span<const double> values);

/// One-line summary of a power-law fit.
std::string power_law_summary(const PowerLaw& fit, std::size_t n_min, std::size_t n_max);

}  // namespace qbill::stats
