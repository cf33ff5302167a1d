#include <iostream>
#include <memory>
#include <limits>
#include <optional>

#include "commands.hpp"
#include "qbill/error.hpp"
#include "qbill/spectral/bethe.hpp"
#include "qbill/spectral/spectrum_file.hpp"

namespace qbill::cli {

double parse_kappa(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v >= 1.0)) {
        throw UsageError("kappa must be a number >= 1 or 'inf', got '" + text + "'");
    }
    return v;
}

void register_spectral(CLI::App& app, Registry& reg) {
    struct Opts {
        double inv_kappa = 1.0;
        std::string kappa;
        int cutoff = 130;
        std::string out;
        bool coefficients = false;
        std::size_t max_states = 0;
        int parity = 0;
    };
    auto o = std::make_shared<Opts>();
    Command& cmd = reg.add(app, "diagonalize", "Diagonalize H_0 for one mass ratio", "diagonalize");
    auto* inv = cmd.app->add_option("--inv-kappa", o->inv_kappa, "1/kappa in [0, 1]")->check(CLI::Range(0.0, 1.0));
    cmd.app->add_option("--kappa", o->kappa, "mass ratio kappa >= 1 or 'inf' (alternative to --inv-kappa)")
        ->excludes(inv);
    cmd.app->add_option("--cutoff", o->cutoff, "basis cutoff c")->check(CLI::Range(3, 100000));
    cmd.app->add_option("--out", o->out, "output QBS1 file")->required();
    cmd.app->add_flag("--coefficients", o->coefficients, "store eigenvectors");
    cmd.app->add_option("--max-states", o->max_states, "keep the lowest N levels (0 = all)");
    cmd.app->add_option("--parity", o->parity, "solve one parity block (+1 or -1; 0 = both)")
        ->check(CLI::IsMember({-1, 0, 1}));
    add_preset(cmd, [](const std::string& p) {
        return ConfigMap{{"cutoff", p == "fast" ? "60" : "130"}};
    });
    cmd.run = [o](const ConfigMap& cfg) {
        MassRatio m = MassRatio::from_inverse(o->inv_kappa);
        if (!o->kappa.empty()) {
            m = MassRatio::from_kappa(parse_kappa(o->kappa));
        }
        spectral::SolveOptions opts;
        opts.coefficients = o->coefficients;
        if (o->max_states > 0) opts.max_states = o->max_states;
        if (o->parity != 0) opts.parity = o->parity;
        const spectral::EigenSolution s = spectral::solve(m, o->cutoff, opts);
        spectral::write_spectrum(o->out, s);
        write_sidecar(o->out, "diagonalize", cfg);
        std::cout << "levels " << s.size() << " basis " << s.basis_dim()
                  << (m.inv_kappa() == 0.0 ? " (diagonal path)" : "") << "\n";
        if (m.inv_kappa() == 1.0 && o->parity == 0 && s.size() > 0) {
            const auto bethe = spectral::bethe_energies(s.size());
            const auto report = spectral::benchmark_accuracy(s, bethe);
            std::cout << "bethe_benchmark levels=" << s.size() << " below_1e-4=" << report.below_1e4
                      << " below_1e-3=" << report.below_1e3 << " (reference 726 / 3795)\n";
        }
    };
}

}  // namespace qbill::cli
