#include "qbill/convnet/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "qbill/error.hpp"

namespace qbill::convnet {

OptimizerKind parse_optimizer(std::string_view name) {
    if (name == "adam") return OptimizerKind::adam;
    if (name == "sgd") return OptimizerKind::sgd;
    throw DomainError("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(OptimizerKind k) { return k == OptimizerKind::adam ? "adam" : "sgd"; }

void TrainingConfig::validate() const {
    if (batch < 1) throw DomainError("batch size must be at least 1");
    if (epochs < 1) throw DomainError("epochs must be at least 1");
    if (!(rate > 0.0)) throw DomainError("learning rate must be positive");
}

namespace {

class Optimizer {
public:
    Optimizer(const Parameters<float>& p, const TrainingConfig& c) : config_(c) {
        if (c.optimizer == OptimizerKind::adam) {
            m_ = Parameters<float>::zeros(p.spec);
            v_ = Parameters<float>::zeros(p.spec);
        }
    }

    void step(Parameters<float>& p, const Parameters<float>& g) {
        const float rate = static_cast<float>(config_.rate);
        if (config_.optimizer == OptimizerKind::sgd) {
            for (std::size_t l = 0; l < p.layers.size(); ++l) {
                p.layers[l].weights -= rate * g.layers[l].weights;
                p.layers[l].bias -= rate * g.layers[l].bias;
            }
            return;
        }
        ++t_;
        const double b1 = config_.beta1;
        const double b2 = config_.beta2;
        const auto c1 = static_cast<float>(1.0 / (1.0 - std::pow(b1, t_)));
        const auto c2 = static_cast<float>(1.0 / (1.0 - std::pow(b2, t_)));
        const auto eps = static_cast<float>(config_.epsilon);
        auto update = [&](auto& param, auto& m, auto& v, const auto& grad) {
            m = static_cast<float>(b1) * m + static_cast<float>(1.0 - b1) * grad;
            v = static_cast<float>(b2) * v + static_cast<float>(1.0 - b2) * grad.cwiseProduct(grad);
            param.array() -= rate * (m.array() * c1) / ((v.array() * c2).sqrt() + eps);
        };
        for (std::size_t l = 0; l < p.layers.size(); ++l) {
            update(p.layers[l].weights, m_.layers[l].weights, v_.layers[l].weights, g.layers[l].weights);
            update(p.layers[l].bias, m_.layers[l].bias, v_.layers[l].bias, g.layers[l].bias);
        }
    }

private:
    TrainingConfig config_;
    Parameters<float> m_;
    Parameters<float> v_;
    long t_ = 0;
};

}  // namespace

TrainResult train(std::span<const imaging::LabeledImage> records, std::span<const std::uint32_t> train_idx,
                  std::span<const std::uint32_t> test_idx, const ArchitectureSpec& spec,
                  const TrainingConfig& config, const EpochCallback& on_epoch) {
    config.validate();
    spec.validate();
    if (train_idx.empty()) {
        throw DomainError("training split is empty");
    }
    for (std::uint32_t i : train_idx) {
        if (i >= records.size()) throw DomainError("training index out of range");
    }
    TrainResult result;
    result.params = Parameters<float>::he_init(spec, config.init_seed);
    Optimizer opt(result.params, config);
    std::mt19937_64 rng(config.shuffle_seed);
    std::vector<std::uint32_t> order(train_idx.begin(), train_idx.end());
    std::vector<const imaging::PixelGrid*> images;
    std::vector<Label> labels;
    Parameters<float> grads;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch) {
            const std::size_t n = std::min(config.batch, order.size() - start);
            images.clear();
            labels.clear();
            for (std::size_t k = start; k < start + n; ++k) {
                images.push_back(&records[order[k]].grid);
                labels.push_back(records[order[k]].label);
            }
            const Matrix<float> x = pack_images<float>(images, spec.input);
            const LossOutput out = loss_and_gradient(result.params, x, labels, &grads);
            if (!std::isfinite(out.loss)) {
                throw DivergenceError("training diverged at epoch " + std::to_string(epoch) +
                                      " (non-finite loss)");
            }
            loss_sum += out.loss * static_cast<double>(n);
            correct += out.correct;
            opt.step(result.params, grads);
        }
        EpochStats stats;
        stats.epoch = epoch;
        stats.loss = loss_sum / static_cast<double>(order.size());
        stats.train_accuracy = static_cast<double>(correct) / static_cast<double>(order.size());
        if (!test_idx.empty()) {
            stats.test_accuracy = evaluate(result.params, records, test_idx).accuracy;
        }
        result.history.push_back(stats);
        if (on_epoch) on_epoch(stats);
    }
    return result;
}

TrainResult train(const imaging::Dataset& dataset, const ArchitectureSpec& spec, const TrainingConfig& config,
                  const EpochCallback& on_epoch) {
    if (dataset.resolution != spec.input) {
        throw ShapeError("dataset resolution " + std::to_string(dataset.resolution) +
                         " does not match network input " + std::to_string(spec.input));
    }
    return train(dataset.records, dataset.train, dataset.test, spec, config, on_epoch);
}

Evaluation evaluate(const Parameters<float>& params, std::span<const imaging::PixelGrid* const> images,
                    std::span<const Label> labels) {
    if (images.size() != labels.size()) {
        throw ShapeError("evaluate: image and label counts differ");
    }
    Evaluation e;
    e.count = images.size();
    e.predictions = predict(params, images);
    std::array<std::size_t, 2> total{};
    std::size_t correct = 0;
    for (std::size_t k = 0; k < images.size(); ++k) {
        const auto t = static_cast<std::size_t>(labels[k]);
        const auto p = static_cast<std::size_t>(e.predictions[k].label());
        ++e.confusion[t][p];
        ++total[t];
        if (t == p) ++correct;
    }
    e.accuracy = e.count ? static_cast<double>(correct) / static_cast<double>(e.count) : 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
        if (total[c] > 0) {
            e.class_accuracy[c] = static_cast<double>(e.confusion[c][c]) / static_cast<double>(total[c]);
        }
    }
    return e;
}

Evaluation evaluate(const Parameters<float>& params, std::span<const imaging::LabeledImage> records,
                    std::span<const std::uint32_t> indices) {
    std::vector<const imaging::PixelGrid*> images;
    std::vector<Label> labels;
    for (std::uint32_t i : indices) {
        if (i >= records.size()) throw DomainError("evaluation index out of range");
        images.push_back(&records[i].grid);
        labels.push_back(records[i].label);
    }
    return evaluate(params, images, labels);
}

Evaluation evaluate(const Parameters<float>& params, std::span<const imaging::LabeledImage> records) {
    std::vector<std::uint32_t> all(records.size());
    std::iota(all.begin(), all.end(), 0u);
    return evaluate(params, records, all);
}

}  // namespace qbill::convnet
