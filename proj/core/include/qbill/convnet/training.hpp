#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qbill/convnet/network.hpp"
#include "qbill/imaging/dataset.hpp"

namespace qbill::convnet {

enum class OptimizerKind { adam, sgd };

OptimizerKind parse_optimizer(std::string_view name);
std::string_view to_string(OptimizerKind k);

struct TrainingConfig {
    OptimizerKind optimizer = OptimizerKind::adam;
    double rate = 1e-3;
    std::size_t batch = 32;
    int epochs = 30;
    std::uint64_t init_seed = 1;
    std::uint64_t shuffle_seed = 2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    void validate() const;
};

struct EpochStats {
    int epoch = 0;
    double loss = 0.0;            // mean training loss over the epoch
    double train_accuracy = 0.0;  // running accuracy seen during the epoch
    std::optional<double> test_accuracy;
};

struct TrainResult {
    Parameters<float> params;
    std::vector<EpochStats> history;
};

using EpochCallback = std::function<void(const EpochStats&)>;

/// Mini-batch training over `train` (record indices into `records`). The
/// train list is reshuffled each epoch with one mt19937_64(shuffle_seed)
/// stream; `test` is evaluated after every epoch when non-empty. Throws
/// DivergenceError on a non-finite batch loss.
TrainResult train(std::span<const imaging::LabeledImage> records, std::span<const std::uint32_t> train,
                  std::span<const std::uint32_t> test, const ArchitectureSpec& spec,
                  const TrainingConfig& config, const EpochCallback& on_epoch = {});

TrainResult train(const imaging::Dataset& dataset, const ArchitectureSpec& spec,
                  const TrainingConfig& config, const EpochCallback& on_epoch = {});

struct Evaluation {
    std::size_t count = 0;
    double accuracy = 0.0;
    /// Indexed by true label; absent when that class has no records.
    std::array<std::optional<double>, 2> class_accuracy;
    /// confusion[true][predicted]
    std::array<std::array<std::size_t, 2>, 2> confusion{};
    std::vector<Prediction> predictions;
};

Evaluation evaluate(const Parameters<float>& params, std::span<const imaging::PixelGrid* const> images,
                    std::span<const Label> labels);
Evaluation evaluate(const Parameters<float>& params, std::span<const imaging::LabeledImage> records,
                    std::span<const std::uint32_t> indices);
Evaluation evaluate(const Parameters<float>& params, std::span<const imaging::LabeledImage> records);

}  // namespace qbill::convnet
