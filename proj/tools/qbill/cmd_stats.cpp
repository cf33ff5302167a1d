#include <cmath>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "qbill/error.hpp"
#include "qbill/imaging/amplitude.hpp"
#include "qbill/imaging/rasterize.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/spectral/spectrum_file.hpp"
#include "qbill/stats/csv.hpp"
#include "qbill/stats/level_statistics.hpp"

namespace qbill::cli {

namespace {

// lowest `levels` of one sector (all when 0); the top of a truncated-basis
// spectrum is unconverged and too sparse
std::vector<double> sector(const spectral::EigenSolution& s, int parity, std::size_t levels) {
    auto e = parity == 0 ? s.energies : s.sector_energies(parity);
    if (levels > 0 && levels < e.size()) e.resize(levels);
    return e;
}

}  // namespace

void register_stats(CLI::App& app, Registry& reg) {
    CLI::App* stats = app.add_subcommand("stats", "Level and amplitude statistics");
    stats->require_subcommand(1);

    {
        struct Opts {
            std::string spectrum, out;
            int parity = 1;
            std::size_t bins = 0;
            double upper = 4.0;
            bool reference = false;
            std::size_t levels = 2000;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*stats, "spacing", "Unfolded nearest-neighbour spacing histogram", "stats spacing");
        cmd.app->add_option("--spectrum", o->spectrum, "QBS1 spectrum")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--parity", o->parity, "parity sector (+1, -1, 0 = all)")->check(CLI::IsMember({-1, 0, 1}));
        cmd.app->add_option("--bins", o->bins, "bin count (0 = sqrt of the spacing count)");
        cmd.app->add_option("--upper", o->upper, "histogram upper edge")->check(CLI::PositiveNumber);
        cmd.app->add_flag("--reference", o->reference, "add p_goe and p_poisson columns");
        cmd.app->add_option("--levels", o->levels, "lowest levels of the sector to use (0 = all)");
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.run = [o](const ConfigMap& cfg) {
            const auto s = load_spectra({o->spectrum}).front();
            const auto u = stats::unfold(sector(s, o->parity, o->levels), o->parity, s.mass.inv_kappa());
            const auto spacings = u.spacings();
            const std::size_t bins = o->bins ? o->bins : stats::default_bin_count(spacings.size());
            io::write_atomic(o->out, stats::spacing_histogram_csv(stats::spacing_histogram(u, bins, o->upper), o->reference));
            write_sidecar(o->out, "stats spacing", cfg, {{"spectrum", file_digest(o->spectrum)}});
            std::cout << "spacings " << spacings.size() << " ks_goe " << stats::ks_distance(spacings, stats::wigner_goe_cdf)
                      << " ks_poisson " << stats::ks_distance(spacings, stats::poisson_cdf) << "\n";
        };
    }
    {
        struct Opts {
            std::vector<std::string> spectra;
            std::string out, summary;
            int parity = 1;
            std::size_t n_min = 100, n_max = 0, points = 24, levels = 2000;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*stats, "deltamin", "Smallest gap among the first N levels, averaged over spectra",
                               "stats deltamin");
        cmd.app->add_option("--spectra", o->spectra, "QBS1 spectra to average")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--parity", o->parity, "parity sector")->check(CLI::IsMember({-1, 0, 1}));
        cmd.app->add_option("--n-min", o->n_min, "smallest N of the fit")->check(CLI::Range(2ul, 1ul << 30));
        cmd.app->add_option("--n-max", o->n_max, "largest N (0 = shortest sector)");
        cmd.app->add_option("--levels", o->levels, "lowest levels of each sector to use (0 = all)");
        cmd.app->add_option("--points", o->points, "log-spaced N values")->check(CLI::Range(2ul, 100000ul));
        cmd.app->add_option("--out", o->out, "output CSV (N,delta_min)")->required();
        cmd.app->add_option("--summary", o->summary, "also write the power-law line to this file");
        cmd.run = [o](const ConfigMap& cfg) {
            std::vector<std::vector<double>> spectra;
            std::map<std::string, std::string> inputs;
            std::size_t shortest = SIZE_MAX;
            for (const auto& s : load_spectra(o->spectra)) {
                spectra.push_back(stats::unfold(sector(s, o->parity, o->levels)).levels);
                shortest = std::min(shortest, spectra.back().size());
            }
            for (const auto& p : o->spectra) inputs[p] = file_digest(p);
            const std::size_t n_max = o->n_max ? o->n_max : shortest;
            if (n_max > shortest || n_max <= o->n_min) throw UsageError("need n-min < n-max <= levels per spectrum");
            const auto grid = stats::log_spaced_grid(o->n_min, n_max, o->points);
            const auto dm = stats::delta_min_average(spectra, grid);
            std::vector<double> n(grid.begin(), grid.end());
            const auto fit = stats::fit_power_law(n, dm);
            io::write_atomic(o->out, stats::delta_min_csv(grid, dm));
            write_sidecar(o->out, "stats deltamin", cfg, inputs);
            const std::string line = stats::power_law_summary(fit, o->n_min, n_max);
            if (!o->summary.empty()) io::write_atomic(o->summary, line + "\n");
            std::cout << line << "\n";
        };
    }
    {
        struct Opts {
            std::string spectrum, out;
            std::size_t state = 500, bins = 60;
            int resolution = 315;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*stats, "amplitude", "Histogram of |psi| for one eigenstate", "stats amplitude");
        cmd.app->add_option("--spectrum", o->spectrum, "QBS1 spectrum with coefficients")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--state", o->state, "state index in merged energy order");
        cmd.app->add_option("--resolution", o->resolution, "raster resolution R")->check(CLI::Range(2, 4096));
        cmd.app->add_option("--bins", o->bins, "histogram bins")->check(CLI::Range(1ul, 100000ul));
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.run = [o](const ConfigMap& cfg) {
            const auto s = load_spectra({o->spectrum}).front();
            const auto psi = imaging::rasterize(s, o->state, o->resolution, imaging::GridKind::wavefunction);
            const auto h = imaging::amplitude_histogram(psi, o->bins);
            // reference: density of |psi| under the Gaussian prediction, 2 P(x) for x >= 0
            std::vector<std::vector<double>> rows;
            for (std::size_t b = 0; b < h.num_bins(); ++b) {
                const double centre = 0.5 * (h.edges[b] + h.edges[b + 1]);
                rows.push_back({h.edges[b], h.edges[b + 1], h.densities[b], 2.0 * imaging::gaussian_prediction(centre)});
            }
            io::write_atomic(o->out, stats::csv_table({"bin_left", "bin_right", "density", "p_gauss"}, rows));
            write_sidecar(o->out, "stats amplitude", cfg, {{"spectrum", file_digest(o->spectrum)}});
            std::cout << "ks_gauss " << imaging::amplitude_ks_distance(psi) << "\n";
        };
    }
}

}  // namespace qbill::cli
