#include "qbill/experiments/influence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qbill/error.hpp"
#include "qbill/stats/csv.hpp"

namespace qbill::experiments {

std::optional<std::uint32_t> select_test_state(const convnet::Parameters<float>& model,
                                               const imaging::Dataset& dataset, const EnergyLookup& energy_of,
                                               double inv_kappa, double energy, double min_confidence) {
    std::optional<std::uint32_t> best;
    double best_gap = 0.0;
    for (std::uint32_t i : dataset.test) {
        const auto& r = dataset.records[i];
        if (r.inv_kappa != inv_kappa) continue;
        const auto p = convnet::predict(model, r.grid);
        const double confidence = r.label == imaging::Label::integrable ? p.b1 : p.b2;
        if (p.label() != r.label || confidence < min_confidence) continue;
        const double gap = std::abs(energy_of(r) - energy);
        if (!best || gap < best_gap) {
            best = i;
            best_gap = gap;
        }
    }
    return best;
}

std::vector<std::vector<std::uint32_t>> draw_betas(const imaging::Dataset& dataset, std::size_t singletons,
                                                   std::size_t blocks, std::size_t block_size,
                                                   std::uint64_t seed) {
    const auto& train = dataset.train;
    if (train.empty()) throw DomainError("train split is empty");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> pool = train;
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::size_t k = 0; k < std::min(singletons, pool.size()); ++k) {
        out.push_back({pool[k]});
    }
    if (blocks == 0 || block_size == 0) return out;
    // train is sorted and records are grouped by kappa, so a window of
    // train entries is a run of consecutive training states unless it
    // straddles two kappa groups
    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + block_size <= train.size(); ++s) {
        if (dataset.records[train[s]].inv_kappa == dataset.records[train[s + block_size - 1]].inv_kappa) {
            starts.push_back(s);
        }
    }
    if (starts.empty()) throw DomainError("no block of consecutive training states fits");
    std::shuffle(starts.begin(), starts.end(), rng);
    for (std::size_t k = 0; k < std::min(blocks, starts.size()); ++k) {
        out.emplace_back(train.begin() + static_cast<std::ptrdiff_t>(starts[k]),
                         train.begin() + static_cast<std::ptrdiff_t>(starts[k] + block_size));
    }
    return out;
}

std::vector<InfluenceResult> leave_out_influence(
    const imaging::Dataset& dataset, const convnet::ArchitectureSpec& spec, const convnet::TrainingConfig& config,
    const convnet::Parameters<float>& full_model, std::uint32_t test_record,
    std::span<const std::vector<std::uint32_t>> betas, const EnergyLookup& energy_of,
    const std::function<void(std::size_t, const InfluenceResult&)>& progress) {
    if (test_record >= dataset.records.size()) throw DomainError("test record out of range");
    const auto& test_image = dataset.records[test_record].grid;
    const double f1_full = convnet::predict(full_model, test_image).b1;
    std::vector<InfluenceResult> results;
    for (std::size_t k = 0; k < betas.size(); ++k) {
        const auto& beta = betas[k];
        for (std::uint32_t i : beta) {
            if (!std::binary_search(dataset.train.begin(), dataset.train.end(), i)) {
                throw DomainError("left-out set is not a subset of the train split");
            }
        }
        std::vector<std::uint32_t> sorted_beta = beta;
        std::sort(sorted_beta.begin(), sorted_beta.end());
        std::vector<std::uint32_t> kept;
        std::set_difference(dataset.train.begin(), dataset.train.end(), sorted_beta.begin(), sorted_beta.end(),
                            std::back_inserter(kept));
        InfluenceResult r;
        r.beta = beta;
        r.beta_first_energy = beta.empty() ? 0.0 : energy_of(dataset.records[beta.front()]);
        r.f1_full = f1_full;
        r.f1_without =
            convnet::predict(convnet::train(dataset.records, kept, {}, spec, config).params, test_image).b1;
        if (progress) progress(k, r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string loo_csv(std::span<const InfluenceResult> results) {
    std::string out = "beta_first_energy,beta_size,f1_diff\n";
    for (const auto& r : results) {
        out += stats::format_number(r.beta_first_energy) + ',' + std::to_string(r.beta.size()) + ',' +
               stats::format_number(r.difference()) + '\n';
    }
    return out;
}

}  // namespace qbill::experiments
