#include <cstdlib>
#include <deque>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qbill/error.hpp"
#include "qbill/spectral/spectrum_file.hpp"
#include "run_config.hpp"

#ifdef QBILL_HAVE_OPENBLAS
extern "C" void openblas_set_num_threads(int);
#endif

namespace qbill::cli {

Command& Registry::add(CLI::App& parent, const std::string& name, const std::string& description,
                       const std::string& full_name) {
    Command c;
    c.app = parent.add_subcommand(name, description);
    c.name = full_name;
    commands_.push_back(std::move(c));
    Command& ref = commands_.back();
    ref.app->add_option("--config", ref.config_path, "key=value configuration file")->check(CLI::ExistingFile);
    return ref;
}

void add_preset(Command& cmd, std::function<ConfigMap(const std::string&)> table) {
    static std::deque<std::string> storage;
    storage.emplace_back();
    cmd.preset_value = &storage.back();
    cmd.preset = std::move(table);
    cmd.app->add_option("--preset", *cmd.preset_value, "fast or full defaults")
        ->check(CLI::IsMember({"fast", "full"}));
}

std::vector<spectral::EigenSolution> load_spectra(const std::vector<std::string>& paths) {
    std::vector<spectral::EigenSolution> out;
    for (const auto& p : paths) {
        verify_sidecar(p);
        out.push_back(spectral::read_spectrum(p));
    }
    return out;
}

}  // namespace qbill::cli

int main(int argc, char** argv) {
    using namespace qbill::cli;
#ifdef QBILL_HAVE_OPENBLAS
    if (const char* t = std::getenv("QBILL_THREADS")) {
        openblas_set_num_threads(std::max(1, std::atoi(t)));
    }
#endif
    CLI::App app{"qbill: triangular billiard spectra, images and classifier"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    Registry reg;
    // commands_ must not reallocate while references are held
    reg.commands().reserve(64);
    register_spectral(app, reg);
    register_stats(app, reg);
    register_dataset(app, reg);
    register_train(app, reg);
    register_experiment(app, reg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Command* selected = nullptr;
    for (auto& c : reg.commands()) {
        if (c.app->parsed() && c.run) selected = &c;
    }
    if (!selected) {
        std::cerr << app.help();
        return 2;
    }
    try {
        ConfigMap file = selected->config_path.empty() ? ConfigMap{} : load_config_file(selected->config_path);
        ConfigMap lowest;
        if (selected->preset) {
            std::string preset = *selected->preset_value;
            if (preset.empty() && file.count("preset")) preset = file["preset"];
            if (!preset.empty()) lowest = selected->preset(preset);
        }
        apply_config(*selected->app, file, lowest);
        const ConfigMap resolved = resolved_config(*selected->app);
        log_config(selected->name, resolved);
        selected->run(resolved);
    } catch (const UsageError& e) {
        std::cerr << "qbill " << selected->name << ": usage error: " << e.what() << '\n';
        return 2;
    } catch (const CLI::ParseError& e) {
        std::cerr << "qbill " << selected->name << ": usage error: " << e.what() << '\n';
        return 2;
    } catch (const qbill::Error& e) {
        std::cerr << "qbill " << selected->name << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "qbill " << selected->name << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
