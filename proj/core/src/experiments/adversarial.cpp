#include "qbill/experiments/adversarial.hpp"

#include <algorithm>
#include <cmath>

#include "qbill/error.hpp"
#include "qbill/imaging/dataset.hpp"
#include "qbill/stats/csv.hpp"

namespace qbill::experiments {

AttackResult adversarial_attack(const convnet::Parameters<float>& model, const imaging::PixelGrid& image,
                                imaging::Label target, const AttackOptions& options) {
    if (image.kind != imaging::GridKind::density) {
        throw DomainError("attack expects a density image");
    }
    if (!(options.step >= 0.0) || options.max_iters < 0) {
        throw DomainError("attack step and iteration budget must be non-negative");
    }
    AttackResult r;
    r.before = convnet::predict(model, image);
    r.after = r.before;
    r.image = image;
    const double top = *std::max_element(image.values.begin(), image.values.end());
    const double delta = options.step * top;
    auto linf = [&](const imaging::PixelGrid& x) {
        double m = 0.0;
        for (std::size_t k = 0; k < x.values.size(); ++k) m = std::max(m, std::abs(x.values[k] - image.values[k]));
        return top > 0.0 ? m / top : 0.0;
    };
    if (r.before.label() == target) {
        r.success = true;
        return r;
    }
    imaging::PixelGrid x = image;
    for (int it = 1; it <= options.max_iters; ++it) {
        const imaging::PixelGrid g = convnet::input_gradient(model, x, target);
        for (std::size_t k = 0; k < x.values.size(); ++k) {
            const double s = (g.values[k] > 0.0) - (g.values[k] < 0.0);
            x.values[k] = std::max(0.0, x.values[k] - delta * s);
        }
        if (delta > 0.0) {
            x = imaging::normalize(std::move(x));
            imaging::round_to_float(x);
        }
        r.iterations = it;
        r.after = convnet::predict(model, x);
        if (r.after.label() == target) {
            r.success = true;
            break;
        }
    }
    r.linf_rel = linf(x);
    r.image = std::move(x);
    return r;
}

std::string attack_csv(std::span<const AttackResult> results) {
    std::string out = "state_index,iterations,success,linf_rel\n";
    for (const auto& r : results) {
        out += std::to_string(r.state_index) + ',' + std::to_string(r.iterations) + ',' +
               (r.success ? "1" : "0") + ',' + stats::format_number(r.linf_rel) + '\n';
    }
    return out;
}

}  // namespace qbill::experiments
