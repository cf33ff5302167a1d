#include "qbill/stats/csv.hpp"

#include <cstdio>

#include "qbill/error.hpp"

namespace qbill::stats {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += (i ? "," : "") + header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw ShapeError("csv_table: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string spacing_histogram_csv(const SpacingHistogram& h, bool with_reference) {
    std::vector<std::string> header{"bin_left", "bin_right", "density"};
    if (with_reference) {
        header.insert(header.end(), {"p_goe", "p_poisson"});
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < h.num_bins(); ++i) {
        std::vector<double> row{h.edges[i], h.edges[i + 1], h.densities[i]};
        if (with_reference) {
            const double mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
            row.push_back(wigner_goe(mid));
            row.push_back(poisson(mid));
        }
        rows.push_back(std::move(row));
    }
    return csv_table(header, rows);
}

std::string delta_min_csv(std::span<const std::size_t> n, std::span<const double> values) {
    if (n.size() != values.size()) {
        throw ShapeError("delta_min_csv: length mismatch");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n.size(); ++i) {
        rows.push_back({static_cast<double>(n[i]), values[i]});
    }
    return csv_table({"N", "delta_min"}, rows);
}

std::string power_law_summary(const PowerLaw& fit, std::size_t n_min, std::size_t n_max) {
    return "power_law amplitude=" + format_number(fit.amplitude) +
           " exponent=" + format_number(fit.exponent) + " n_min=" + std::to_string(n_min) +
           " n_max=" + std::to_string(n_max) + "\n";
}

}  // namespace qbill::stats
