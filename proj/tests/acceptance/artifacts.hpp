#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qbill/convnet/network.hpp"
#include "qbill/convnet/training.hpp"
#include "qbill/imaging/dataset.hpp"
#include "qbill/spectral/eigen_solution.hpp"

namespace qbill::acceptance {

constexpr int kCutoff = 130;
constexpr std::size_t kCoefficientStates = 1100;
constexpr std::uint64_t kSplitSeed = 2024;
constexpr int kEnsembleSize = 5;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// "inf" for an infinitely heavy impurity, otherwise the shortest decimal form.
std::string kappa_tag(double kappa);

/// Loads cached artifacts from the work directory, computing and storing
/// whatever is missing. File names match the qbill command-line pipeline.
class Artifacts {
public:
    explicit Artifacts(std::filesystem::path work);

    const std::filesystem::path& work() const { return work_; }
    std::filesystem::path results_dir() const;

    /// c = 130 spectrum; with coefficients only the lowest 1100 levels are kept.
    spectral::EigenSolution spectrum(double kappa, bool coefficients) const;

    const imaging::Dataset& dataset();
    const std::vector<convnet::Parameters<float>>& ensemble();
    const convnet::Parameters<float>& model(int seed);
    std::string model_path(int seed) const;

    /// Energy of a dataset record, from the coefficient spectra.
    double energy_of(const imaging::LabeledImage& r);

    static convnet::TrainingConfig training_config(int seed);

private:
    std::filesystem::path work_;
    std::unique_ptr<imaging::Dataset> dataset_;
    std::map<int, convnet::Parameters<float>> models_;
    std::vector<convnet::Parameters<float>> ensemble_;
    std::map<double, std::vector<double>> energies_;  // inv_kappa -> merged energies
};

}  // namespace qbill::acceptance
