#include "qbill/experiments/scans.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qbill/convnet/training.hpp"
#include "qbill/error.hpp"
#include "qbill/imaging/bosonic.hpp"
#include "qbill/imaging/rasterize.hpp"
#include "qbill/stats/csv.hpp"

namespace qbill::experiments {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::string cell(std::optional<double> v) { return v ? stats::format_number(*v) : std::string(); }

std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += cells[k];
    }
    return out + '\n';
}

// Predicts in chunks so large image sets never need one giant batch.
std::size_t count_label(const Model& model, std::span<const imaging::PixelGrid* const> images,
                        imaging::Label wanted) {
    const auto preds = convnet::predict(model, images);
    return static_cast<std::size_t>(std::count_if(preds.begin(), preds.end(),
                                                  [&](const auto& p) { return p.label() == wanted; }));
}

EnsembleAccuracy summarize(std::vector<double> per_model) {
    EnsembleAccuracy e;
    if (per_model.empty()) {
        throw DomainError("ensemble is empty");
    }
    e.mean = std::accumulate(per_model.begin(), per_model.end(), 0.0) / static_cast<double>(per_model.size());
    e.min = *std::min_element(per_model.begin(), per_model.end());
    e.max = *std::max_element(per_model.begin(), per_model.end());
    e.per_model = std::move(per_model);
    return e;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

EnsembleAccuracy ensemble_accuracy(std::span<const Model> ensemble,
                                   std::span<const imaging::PixelGrid* const> images,
                                   std::span<const imaging::Label> labels) {
    std::vector<double> acc;
    for (const auto& m : ensemble) {
        acc.push_back(convnet::evaluate(m, images, labels).accuracy);
    }
    return summarize(std::move(acc));
}

std::vector<MassScanRow> mass_scan(std::span<const Model> ensemble,
                                   std::span<const spectral::EigenSolution> solutions,
                                   const imaging::DatasetOptions& states) {
    std::vector<MassScanRow> rows;
    for (const auto& s : solutions) {
        const imaging::Dataset d = imaging::build_dataset(std::span(&s, 1), states, [](const std::string&) {});
        std::vector<const imaging::PixelGrid*> images;
        std::vector<imaging::Label> labels;
        for (const auto& r : d.records) {
            images.push_back(&r.grid);
            labels.push_back(r.label);
        }
        rows.push_back({s.mass.inv_kappa(), ensemble_accuracy(ensemble, images, labels)});
    }
    // kappa ascending
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.inv_kappa > b.inv_kappa; });
    return rows;
}

double AlphaScanRow::source_average() const {
    if (by_inv_kappa.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [k, v] : by_inv_kappa) s += v;
    return s / static_cast<double>(by_inv_kappa.size());
}

std::vector<AlphaScanRow> alpha_scan(const Model& model, std::span<const imaging::LabeledImage> records,
                                     std::span<const double> alphas) {
    std::vector<AlphaScanRow> rows;
    std::map<double, std::pair<std::size_t, std::size_t>> tally;  // correct, total
    for (double alpha : alphas) {
        std::vector<imaging::PixelGrid> scaled;
        scaled.reserve(records.size());
        for (const auto& r : records) {
            scaled.push_back(imaging::scale_image(r.grid, alpha));
        }
        std::vector<const imaging::PixelGrid*> images;
        for (const auto& g : scaled) images.push_back(&g);
        const auto preds = convnet::predict(model, images);
        tally.clear();
        std::size_t correct = 0;
        for (std::size_t k = 0; k < records.size(); ++k) {
            const bool ok = preds[k].label() == records[k].label;
            correct += ok;
            auto& t = tally[records[k].inv_kappa];
            t.first += ok;
            ++t.second;
        }
        AlphaScanRow row;
        row.alpha = alpha;
        row.overall = records.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(records.size());
        for (const auto& [inv, t] : tally) {
            row.by_inv_kappa[inv] = static_cast<double>(t.first) / static_cast<double>(t.second);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double NoiseScanRow::average() const {
    if (integrable && non_integrable) return 0.5 * (*integrable + *non_integrable);
    if (integrable) return *integrable;
    if (non_integrable) return *non_integrable;
    return 0.0;
}

std::vector<imaging::LabeledImage> wavefunction_sources(std::span<const spectral::EigenSolution> solutions,
                                                        const imaging::DatasetOptions& states) {
    std::vector<const spectral::EigenSolution*> ordered;
    for (const auto& s : solutions) ordered.push_back(&s);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        return a->mass.inv_kappa() > b->mass.inv_kappa();
    });
    std::vector<imaging::LabeledImage> out;
    for (const auto* s : ordered) {
        if (!s->has_coefficients() || static_cast<std::size_t>(s->coefficients.rows()) < states.end_state) {
            throw DomainError("wavefunction sources need coefficients for every requested state");
        }
        const imaging::Rasterizer raster(s->cutoff, states.resolution);
        for (std::size_t n = states.first_state; n < states.end_state; ++n) {
            out.push_back({raster.wavefunction(s->state(n)), imaging::label_for(s->mass), s->mass.inv_kappa(),
                           static_cast<std::uint32_t>(n)});
        }
    }
    return out;
}

std::vector<NoiseScanRow> noise_scan(const Model& model, std::span<const imaging::LabeledImage> wavefunctions,
                                     std::span<const double> sigmas, const NoiseOptions& options) {
    constexpr std::size_t chunk = 256;
    std::vector<NoiseScanRow> rows;
    for (std::size_t si = 0; si < sigmas.size(); ++si) {
        const double sigma = sigmas[si];
        std::array<std::size_t, 2> correct{}, total{};
        for (std::size_t start = 0; start < wavefunctions.size(); start += chunk) {
            const std::size_t n = std::min(chunk, wavefunctions.size() - start);
            std::vector<imaging::PixelGrid> noisy;
            noisy.reserve(n);
            for (std::size_t k = start; k < start + n; ++k) {
                const auto& psi = wavefunctions[k].grid;
                const std::uint64_t seed = mix_seed(options.seed, k, si);
                imaging::PixelGrid g = options.mode == NoiseMode::multiplicative
                                           ? imaging::multiplicative_noise(psi, sigma, seed)
                                           : imaging::additive_noise(psi, sigma, options.weight, seed);
                g = imaging::to_density(g);
                imaging::round_to_float(g);
                noisy.push_back(std::move(g));
            }
            std::vector<const imaging::PixelGrid*> images;
            for (const auto& g : noisy) images.push_back(&g);
            const auto preds = convnet::predict(model, images);
            for (std::size_t k = 0; k < n; ++k) {
                const auto t = static_cast<std::size_t>(wavefunctions[start + k].label);
                ++total[t];
                correct[t] += preds[k].label() == wavefunctions[start + k].label;
            }
        }
        NoiseScanRow row;
        row.sigma = sigma;
        if (total[0]) row.integrable = static_cast<double>(correct[0]) / static_cast<double>(total[0]);
        if (total[1]) row.non_integrable = static_cast<double>(correct[1]) / static_cast<double>(total[1]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<RandomImageRow> random_image_study(const Model& model, int resolution, std::size_t count,
                                               std::span<const double> zero_fractions,
                                               std::span<const imaging::RandomDistribution> distributions,
                                               std::uint64_t seed) {
    std::vector<RandomImageRow> rows;
    for (std::size_t di = 0; di < distributions.size(); ++di) {
        for (std::size_t zi = 0; zi < zero_fractions.size(); ++zi) {
            std::vector<imaging::PixelGrid> images;
            images.reserve(count);
            for (std::size_t k = 0; k < count; ++k) {
                imaging::PixelGrid g = imaging::random_image(resolution, zero_fractions[zi], distributions[di],
                                                             mix_seed(seed, k, di * 1000 + zi));
                imaging::round_to_float(g);
                images.push_back(std::move(g));
            }
            std::vector<const imaging::PixelGrid*> ptrs;
            for (const auto& g : images) ptrs.push_back(&g);
            const std::size_t non = count_label(model, ptrs, imaging::Label::non_integrable);
            rows.push_back({distributions[di], zero_fractions[zi], count,
                            count ? static_cast<double>(non) / static_cast<double>(count) : 0.0});
        }
    }
    return rows;
}

std::vector<imaging::PixelGrid> bosonic_images(std::size_t first, std::size_t count, int resolution) {
    std::vector<imaging::PixelGrid> out;
    out.reserve(count);
    for (const auto& pair : imaging::bosonic_pairs(first, count)) {
        imaging::PixelGrid g = imaging::to_density(imaging::normalize(imaging::bosonic_state(pair.k1, pair.k2, resolution)));
        imaging::round_to_float(g);
        out.push_back(std::move(g));
    }
    return out;
}

EnsembleAccuracy bosonic_classification(std::span<const Model> ensemble, std::size_t first, std::size_t count,
                                        int resolution) {
    const auto images = bosonic_images(first, count, resolution);
    std::vector<const imaging::PixelGrid*> ptrs;
    for (const auto& g : images) ptrs.push_back(&g);
    std::vector<double> frac;
    for (const auto& m : ensemble) {
        frac.push_back(static_cast<double>(count_label(m, ptrs, imaging::Label::integrable)) /
                       static_cast<double>(std::max<std::size_t>(count, 1)));
    }
    return summarize(std::move(frac));
}

std::string mass_scan_csv(std::span<const MassScanRow> rows) {
    std::string out = "kappa,acc_mean,acc_min,acc_max\n";
    for (const auto& r : rows) {
        const double kappa = r.inv_kappa == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / r.inv_kappa;
        out += join({stats::format_number(kappa), stats::format_number(r.accuracy.mean),
                     stats::format_number(r.accuracy.min), stats::format_number(r.accuracy.max)});
    }
    return out;
}

std::string alpha_scan_csv(std::span<const AlphaScanRow> rows) {
    std::string out = "alpha,acc_overall,acc_k1,acc_k2,acc_k5,acc_kinf\n";
    for (const auto& r : rows) {
        auto source = [&](double inv) -> std::optional<double> {
            const auto it = r.by_inv_kappa.find(inv);
            if (it == r.by_inv_kappa.end()) return std::nullopt;
            return it->second;
        };
        out += join({stats::format_number(r.alpha), stats::format_number(r.overall), cell(source(1.0)),
                     cell(source(0.5)), cell(source(0.2)), cell(source(0.0))});
    }
    return out;
}

std::string noise_scan_csv(std::span<const NoiseScanRow> rows) {
    std::string out = "sigma,acc_integrable,acc_nonintegrable,acc_avg\n";
    for (const auto& r : rows) {
        out += join({stats::format_number(r.sigma), cell(r.integrable), cell(r.non_integrable),
                     stats::format_number(r.average())});
    }
    return out;
}

std::string random_image_csv(std::span<const RandomImageRow> rows) {
    std::string out = "distribution,zero_fraction,count,frac_nonintegrable\n";
    for (const auto& r : rows) {
        out += join({std::string(imaging::to_string(r.distribution)), stats::format_number(r.zero_fraction),
                     std::to_string(r.count), stats::format_number(r.fraction_non_integrable)});
    }
    return out;
}

}  // namespace qbill::experiments
