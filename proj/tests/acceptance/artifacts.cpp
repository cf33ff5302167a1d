#include "artifacts.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "qbill/convnet/model_file.hpp"
#include "qbill/error.hpp"
#include "qbill/spectral/spectrum_file.hpp"

namespace qbill::acceptance {

namespace fs = std::filesystem;

std::string kappa_tag(double kappa) {
    if (std::isinf(kappa)) return "inf";
    std::ostringstream o;
    o << kappa;
    return o.str();
}

Artifacts::Artifacts(fs::path work) : work_(std::move(work)) {
    fs::create_directories(work_ / "spectra");
    fs::create_directories(work_ / "data");
    fs::create_directories(work_ / "models");
    fs::create_directories(results_dir());
}

fs::path Artifacts::results_dir() const { return work_ / "results"; }

spectral::EigenSolution Artifacts::spectrum(double kappa, bool coefficients) const {
    const auto path = work_ / "spectra" / ((coefficients ? "coef_k" : "energy_k") + kappa_tag(kappa) + ".qbs");
    if (fs::exists(path)) return spectral::read_spectrum(path.string());
    std::clog << "computing " << path.filename().string() << " (c=" << kCutoff << ")\n";
    spectral::SolveOptions o;
    o.coefficients = coefficients;
    if (coefficients) o.max_states = kCoefficientStates;
    auto s = spectral::solve(MassRatio::from_kappa(kappa), kCutoff, o);
    spectral::write_spectrum(path.string(), s);
    return s;
}

const imaging::Dataset& Artifacts::dataset() {
    if (dataset_) return *dataset_;
    const auto path = work_ / "data" / "dataset.qbd";
    if (fs::exists(path)) {
        dataset_ = std::make_unique<imaging::Dataset>(imaging::read_dataset(path.string()));
        return *dataset_;
    }
    std::clog << "building dataset.qbd\n";
    std::vector<spectral::EigenSolution> sols;
    for (double k : {1.0, 2.0, 5.0, kInf}) sols.push_back(spectrum(k, true));
    imaging::DatasetOptions o;
    o.split_seed = kSplitSeed;
    dataset_ = std::make_unique<imaging::Dataset>(imaging::build_dataset(sols, o, [](const std::string&) {}));
    imaging::write_dataset(path.string(), *dataset_);
    return *dataset_;
}

convnet::TrainingConfig Artifacts::training_config(int seed) {
    convnet::TrainingConfig c;
    c.init_seed = static_cast<std::uint64_t>(seed);
    c.shuffle_seed = static_cast<std::uint64_t>(seed) + 100;
    return c;
}

std::string Artifacts::model_path(int seed) const {
    return (work_ / "models" / ("seed" + std::to_string(seed) + ".qbn")).string();
}

const convnet::Parameters<float>& Artifacts::model(int seed) {
    if (auto it = models_.find(seed); it != models_.end()) return it->second;
    const auto path = model_path(seed);
    if (!fs::exists(path)) {
        std::clog << "training seed " << seed << "\n";
        const auto t0 = std::chrono::steady_clock::now();
        auto r = convnet::train(dataset(), convnet::ArchitectureSpec{}, training_config(seed));
        convnet::save_model(r.params, path);
        std::clog << "  done in " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                  << " s\n";
    }
    return models_.emplace(seed, convnet::load_model(path)).first->second;
}

const std::vector<convnet::Parameters<float>>& Artifacts::ensemble() {
    if (ensemble_.empty()) {
        for (int s = 1; s <= kEnsembleSize; ++s) ensemble_.push_back(model(s));
    }
    return ensemble_;
}

double Artifacts::energy_of(const imaging::LabeledImage& r) {
    auto it = energies_.find(r.inv_kappa);
    if (it == energies_.end()) {
        const double kappa = r.inv_kappa == 0.0 ? kInf : 1.0 / r.inv_kappa;
        it = energies_.emplace(r.inv_kappa, spectrum(kappa, true).energies).first;
    }
    return it->second.at(r.state_index);
}

}  // namespace qbill::acceptance
