#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbill/convnet/network.hpp"
#include "qbill/imaging/dataset.hpp"
#include "qbill/imaging/noise.hpp"
#include "qbill/spectral/eigen_solution.hpp"

namespace qbill::experiments {

using Model = convnet::Parameters<float>;

/// Deterministic per-item seed derived from a base seed and up to two indices.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct EnsembleAccuracy {
    std::vector<double> per_model;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

EnsembleAccuracy ensemble_accuracy(std::span<const Model> ensemble,
                                   std::span<const imaging::PixelGrid* const> images,
                                   std::span<const imaging::Label> labels);

// mass_scan: kappa, acc_mean, acc_min, acc_max
struct MassScanRow {
    double inv_kappa = 0.0;
    EnsembleAccuracy accuracy;
};

/// Rasterizes states [first_state, end_state) of each solution as density
/// images and scores the ensemble against label_for(kappa). For kappa != 1
/// the accuracy equals the fraction classified non-integrable.
std::vector<MassScanRow> mass_scan(std::span<const Model> ensemble,
                                   std::span<const spectral::EigenSolution> solutions,
                                   const imaging::DatasetOptions& states);

// alpha_scan: alpha, acc_overall, acc_k1, acc_k2, acc_k5, acc_kinf
struct AlphaScanRow {
    double alpha = 1.0;
    double overall = 0.0;
    std::map<double, double> by_inv_kappa;  // source 1/kappa -> accuracy
    /// Mean of the per-source curves.
    double source_average() const;
};

std::vector<AlphaScanRow> alpha_scan(const Model& model, std::span<const imaging::LabeledImage> records,
                                     std::span<const double> alphas);

enum class NoiseMode { multiplicative, additive };

struct NoiseOptions {
    NoiseMode mode = NoiseMode::multiplicative;
    double weight = 1.0;  // G for additive mode
    std::uint64_t seed = 11;
};

// noise_scan: sigma, acc_integrable, acc_nonintegrable, acc_avg
struct NoiseScanRow {
    double sigma = 0.0;
    std::optional<double> integrable;
    std::optional<double> non_integrable;
    double average() const;
};

/// `wavefunctions` hold raw (un-normalized) psi rasters with their labels;
/// each is perturbed, squared into a density, rounded to f32 like dataset
/// pixels and classified. At sigma = 0 in multiplicative mode the images are
/// bit-identical to build_dataset output.
std::vector<NoiseScanRow> noise_scan(const Model& model, std::span<const imaging::LabeledImage> wavefunctions,
                                     std::span<const double> sigmas, const NoiseOptions& options);

/// Raw psi rasters for the given states, in build_dataset record order.
std::vector<imaging::LabeledImage> wavefunction_sources(std::span<const spectral::EigenSolution> solutions,
                                                        const imaging::DatasetOptions& states);

struct RandomImageRow {
    imaging::RandomDistribution distribution = imaging::RandomDistribution::gaussian;
    double zero_fraction = 0.0;
    std::size_t count = 0;
    double fraction_non_integrable = 0.0;
};

std::vector<RandomImageRow> random_image_study(const Model& model, int resolution, std::size_t count,
                                               std::span<const double> zero_fractions,
                                               std::span<const imaging::RandomDistribution> distributions,
                                               std::uint64_t seed);

/// Density images of bosonic states [first, first + count) in energy order.
std::vector<imaging::PixelGrid> bosonic_images(std::size_t first, std::size_t count, int resolution);

/// Fraction of bosonic images classified integrable, per model.
EnsembleAccuracy bosonic_classification(std::span<const Model> ensemble, std::size_t first,
                                        std::size_t count, int resolution);

std::string mass_scan_csv(std::span<const MassScanRow> rows);
std::string alpha_scan_csv(std::span<const AlphaScanRow> rows);
std::string noise_scan_csv(std::span<const NoiseScanRow> rows);
std::string random_image_csv(std::span<const RandomImageRow> rows);

}  // namespace qbill::experiments
