#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbill/convnet/training.hpp"
#include "qbill/imaging/dataset.hpp"

namespace qbill::experiments {

/// Energy of a dataset record, looked up from its spectrum.
using EnergyLookup = std::function<double(const imaging::LabeledImage&)>;

struct InfluenceResult {
    std::vector<std::uint32_t> beta;  // left-out record indices
    double beta_first_energy = 0.0;
    double f1_full = 0.0;
    double f1_without = 0.0;
    double difference() const { return f1_full - f1_without; }
};

/// Test-split record of the given 1/kappa whose energy is nearest `energy`
/// among those the model classifies correctly with confidence >= min_confidence.
std::optional<std::uint32_t> select_test_state(const convnet::Parameters<float>& model,
                                               const imaging::Dataset& dataset, const EnergyLookup& energy_of,
                                               double inv_kappa, double energy, double min_confidence = 0.99);

/// `singletons` random train records, then `blocks` runs of `block_size`
/// consecutive train records (same kappa, ascending state index).
std::vector<std::vector<std::uint32_t>> draw_betas(const imaging::Dataset& dataset, std::size_t singletons,
                                                   std::size_t blocks, std::size_t block_size,
                                                   std::uint64_t seed);

/// Retrains without each beta (identical spec and seeds) and records the
/// change of b1 on the test record. `f1_full` comes from `full_model`.
/// Throws DomainError if a beta is not part of the train split.
std::vector<InfluenceResult> leave_out_influence(
    const imaging::Dataset& dataset, const convnet::ArchitectureSpec& spec, const convnet::TrainingConfig& config,
    const convnet::Parameters<float>& full_model, std::uint32_t test_record,
    std::span<const std::vector<std::uint32_t>> betas, const EnergyLookup& energy_of,
    const std::function<void(std::size_t, const InfluenceResult&)>& progress = {});

// loo: beta_first_energy, beta_size, f1_diff
std::string loo_csv(std::span<const InfluenceResult> results);

}  // namespace qbill::experiments
