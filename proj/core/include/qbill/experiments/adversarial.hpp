#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qbill/convnet/network.hpp"
#include "qbill/imaging/pixel_grid.hpp"

namespace qbill::experiments {

struct AttackOptions {
    double step = 1e-3;  // per-iteration step, relative to the original image maximum
    int max_iters = 200;
};

struct AttackResult {
    std::size_t state_index = 0;
    int iterations = 0;
    bool success = false;  // label flipped to the target
    double linf_rel = 0.0;  // max |x - x0| / max x0
    convnet::Prediction before;
    convnet::Prediction after;
    imaging::PixelGrid image;
};

/// Iterative gradient-sign attack on a density image: each step moves every
/// pixel by -step * max(x0) * sign(d loss(target) / dx), clamps at zero and
/// renormalizes. Stops as soon as the prediction equals `target`.
AttackResult adversarial_attack(const convnet::Parameters<float>& model, const imaging::PixelGrid& image,
                                imaging::Label target, const AttackOptions& options = {});

// attack: state_index, iterations, success, linf_rel
std::string attack_csv(std::span<const AttackResult> results);

}  // namespace qbill::experiments
