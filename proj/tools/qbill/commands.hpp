#pragma once

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbill/convnet/training.hpp"
#include "qbill/imaging/dataset.hpp"
#include "qbill/spectral/eigen_solution.hpp"
#include "run_config.hpp"

namespace qbill::cli {

struct Command {
    CLI::App* app = nullptr;
    std::string name;  // e.g. "experiment alpha"
    std::function<void(const ConfigMap& resolved)> run;
    /// Built-in defaults selected by --preset, lowest priority.
    std::function<ConfigMap(const std::string& preset)> preset;
    std::string* preset_value = nullptr;
    std::string config_path;
};

class Registry {
public:
    /// Adds a subcommand with a --config option.
    Command& add(CLI::App& parent, const std::string& name, const std::string& description,
                 const std::string& full_name);
    std::vector<Command>& commands() { return commands_; }

private:
    std::vector<Command> commands_;
};

void register_spectral(CLI::App& app, Registry& reg);
void register_stats(CLI::App& app, Registry& reg);
void register_dataset(CLI::App& app, Registry& reg);
void register_train(CLI::App& app, Registry& reg);
void register_experiment(CLI::App& app, Registry& reg);

/// Hyperparameters shared by train and experiment loo.
struct TrainingOptions {
    int epochs = 30;
    std::size_t batch = 32;
    double rate = 1e-3;
    std::string optimizer = "adam";
    std::uint64_t init_seed = 1;
    std::uint64_t shuffle_seed = 2;
    int conv1_filters = 16, conv1_kernel = 3;
    int conv2_filters = 32, conv2_kernel = 3;
    std::string padding = "same";
    int dense = 128;

    convnet::ArchitectureSpec spec(int input) const;
    convnet::TrainingConfig config() const;
};

void add_training_options(CLI::App& app, TrainingOptions& o);
/// Names of the options registered by add_training_options.
const std::vector<std::string>& training_keys();

/// Verifies both sidecars and that the model was trained on this dataset
/// (unless `allow_foreign`). Throws FormatError on a digest mismatch.
void check_model_dataset(const std::string& model, const std::string& dataset, bool allow_foreign);

imaging::GridKind parse_kind(const std::string& s);

/// "inf" or a number >= 1; UsageError otherwise.
double parse_kappa(const std::string& text);

std::vector<spectral::EigenSolution> load_spectra(const std::vector<std::string>& paths);

/// Adds a "--preset fast|full" option to `cmd`.
void add_preset(Command& cmd, std::function<ConfigMap(const std::string&)> table);

}  // namespace qbill::cli
