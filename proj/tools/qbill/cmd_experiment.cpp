#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "qbill/convnet/model_file.hpp"
#include "qbill/error.hpp"
#include "qbill/experiments/adversarial.hpp"
#include "qbill/experiments/influence.hpp"
#include "qbill/experiments/scans.hpp"
#include "qbill/imaging/pgm.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/stats/csv.hpp"
#include "qbill/stats/level_statistics.hpp"

namespace qbill::cli {

namespace {

std::vector<convnet::Parameters<float>> load_models(const std::vector<std::string>& paths) {
    std::vector<convnet::Parameters<float>> out;
    for (const auto& p : paths) {
        verify_sidecar(p);
        out.push_back(convnet::load_model(p));
    }
    return out;
}

std::map<std::string, std::string> digests(const std::vector<std::string>& paths, const std::string& prefix) {
    std::map<std::string, std::string> out;
    for (std::size_t k = 0; k < paths.size(); ++k) out[prefix + std::to_string(k)] = file_digest(paths[k]);
    return out;
}

void finish(const std::string& out, const std::string& csv, const std::string& command, const ConfigMap& cfg,
            const std::map<std::string, std::string>& inputs) {
    io::write_atomic(out, csv);
    write_sidecar(out, command, cfg, inputs);
    std::cout << csv;
}

}  // namespace

void register_experiment(CLI::App& app, Registry& reg) {
    CLI::App* ex = app.add_subcommand("experiment", "Experiments on trained networks");
    ex->require_subcommand(1);

    {  // mass
        struct Opts {
            std::vector<std::string> models, spectra;
            std::size_t first = 50, end = 1050;
            std::string out;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "mass", "Accuracy versus mass ratio for a model ensemble", "experiment mass");
        cmd.app->add_option("--models", o->models, "QBN1 ensemble")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--spectra", o->spectra, "QBS1 spectra with coefficients")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--first", o->first, "first state index");
        cmd.app->add_option("--end", o->end, "end state index (exclusive)");
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.run = [o](const ConfigMap& cfg) {
            const auto models = load_models(o->models);
            const auto spectra = load_spectra(o->spectra);
            imaging::DatasetOptions states;
            states.first_state = o->first;
            states.end_state = o->end;
            states.resolution = models.front().spec.input;
            const auto rows = experiments::mass_scan(models, spectra, states);
            auto inputs = digests(o->models, "model");
            inputs.merge(digests(o->spectra, "spectrum"));
            finish(o->out, experiments::mass_scan_csv(rows), "experiment mass", cfg, inputs);
        };
    }
    {  // alpha
        struct Opts {
            std::string model, dataset, out;
            std::vector<double> alphas{0.25, 0.5, 0.8, 1.0, 1.25, 2.0, 4.0};
            bool allow_foreign = false;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "alpha", "Accuracy on alpha-scaled dataset images", "experiment alpha");
        cmd.app->add_option("--model", o->model, "QBN1 model")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--dataset", o->dataset, "QBD1 dataset")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--alphas", o->alphas, "scale factors")->delimiter(',')->check(CLI::PositiveNumber);
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.app->add_flag("--allow-foreign-dataset", o->allow_foreign, "skip the model/dataset digest check");
        cmd.run = [o](const ConfigMap& cfg) {
            check_model_dataset(o->model, o->dataset, o->allow_foreign);
            const auto model = convnet::load_model(o->model);
            const auto d = imaging::read_dataset(o->dataset);
            convnet::require_input(model, d.resolution);
            const auto rows = experiments::alpha_scan(model, d.records, o->alphas);
            finish(o->out, experiments::alpha_scan_csv(rows), "experiment alpha", cfg,
                   {{"model", file_digest(o->model)}, {"dataset", file_digest(o->dataset)}});
        };
    }
    {  // noise
        struct Opts {
            std::string model, out, mode = "multiplicative";
            std::vector<std::string> spectra;
            std::size_t first = 50, end = 1050;
            std::vector<double> sigmas{0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
            double weight = 1.0;
            std::uint64_t seed = 11;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "noise", "Accuracy on noisy eigenstates", "experiment noise");
        cmd.app->add_option("--model", o->model, "QBN1 model")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--spectra", o->spectra, "QBS1 spectra with coefficients")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--first", o->first, "first state index");
        cmd.app->add_option("--end", o->end, "end state index (exclusive)");
        cmd.app->add_option("--mode", o->mode, "multiplicative or additive")
            ->check(CLI::IsMember({"multiplicative", "additive"}));
        cmd.app->add_option("--weight", o->weight, "additive weight G")->check(CLI::NonNegativeNumber);
        cmd.app->add_option("--sigmas", o->sigmas, "noise standard deviations")->delimiter(',')->check(CLI::NonNegativeNumber);
        cmd.app->add_option("--seed", o->seed, "noise seed");
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.run = [o](const ConfigMap& cfg) {
            const auto model = load_models({o->model}).front();
            const auto spectra = load_spectra(o->spectra);
            imaging::DatasetOptions states;
            states.first_state = o->first;
            states.end_state = o->end;
            states.resolution = model.spec.input;
            const auto sources = experiments::wavefunction_sources(spectra, states);
            experiments::NoiseOptions opts;
            opts.mode = o->mode == "additive" ? experiments::NoiseMode::additive : experiments::NoiseMode::multiplicative;
            opts.weight = o->weight;
            opts.seed = o->seed;
            const auto rows = experiments::noise_scan(model, sources, o->sigmas, opts);
            auto inputs = digests(o->spectra, "spectrum");
            inputs["model"] = file_digest(o->model);
            finish(o->out, experiments::noise_scan_csv(rows), "experiment noise", cfg, inputs);
        };
    }
    {  // random
        struct Opts {
            std::string model, out;
            std::size_t count = 1000;
            std::vector<double> zero_fractions{0.0, 0.35};
            std::vector<std::string> distributions{"gaussian", "laplace", "uniform"};
            std::uint64_t seed = 13;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "random", "Classification of random density images", "experiment random");
        cmd.app->add_option("--model", o->model, "QBN1 model")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--count", o->count, "images per configuration");
        cmd.app->add_option("--zero-fractions", o->zero_fractions, "fractions of zero pixels")->delimiter(',')->check(CLI::Range(0.0, 0.999999));
        cmd.app->add_option("--distributions", o->distributions, "gaussian, laplace, uniform")->delimiter(',')
            ->check(CLI::IsMember({"gaussian", "laplace", "uniform"}));
        cmd.app->add_option("--seed", o->seed, "image seed");
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.run = [o](const ConfigMap& cfg) {
            const auto model = load_models({o->model}).front();
            std::vector<imaging::RandomDistribution> dists;
            for (const auto& d : o->distributions) dists.push_back(imaging::parse_distribution(d));
            const auto rows = experiments::random_image_study(model, model.spec.input, o->count, o->zero_fractions,
                                                              dists, o->seed);
            finish(o->out, experiments::random_image_csv(rows), "experiment random", cfg,
                   {{"model", file_digest(o->model)}});
        };
    }
    {  // bosonic
        struct Opts {
            std::vector<std::string> models;
            std::string out;
            std::size_t first = 50, count = 1000;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "bosonic", "Classification of bosonic (symmetric) states", "experiment bosonic");
        cmd.app->add_option("--models", o->models, "QBN1 ensemble")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--first", o->first, "first bosonic state in energy order");
        cmd.app->add_option("--count", o->count, "number of states");
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.run = [o](const ConfigMap& cfg) {
            const auto models = load_models(o->models);
            const auto r = experiments::bosonic_classification(models, o->first, o->count, models.front().spec.input);
            std::vector<std::vector<double>> rows;
            for (std::size_t k = 0; k < r.per_model.size(); ++k) rows.push_back({static_cast<double>(k), r.per_model[k]});
            finish(o->out, stats::csv_table({"model", "frac_integrable"}, rows), "experiment bosonic", cfg,
                   digests(o->models, "model"));
            std::cout << "frac_integrable mean " << r.mean << " min " << r.min << " max " << r.max << "\n";
        };
    }
    {  // loo
        struct Opts {
            std::string model, dataset, out;
            std::vector<std::string> spectra;
            std::size_t singletons = 40, blocks = 20, block_size = 10;
            std::uint64_t seed = 17;
            std::string test_kappa = "5";
            double test_energy = 534.86, min_confidence = 0.99;
            TrainingOptions train;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "loo", "Leave-out influence of training states on one prediction", "experiment loo");
        cmd.app->add_option("--model", o->model, "QBN1 model trained on --dataset")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--dataset", o->dataset, "QBD1 dataset")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--spectra", o->spectra, "QBS1 spectra supplying state energies")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--singletons", o->singletons, "single-state left-out sets");
        cmd.app->add_option("--blocks", o->blocks, "consecutive-state left-out sets");
        cmd.app->add_option("--block-size", o->block_size, "states per block");
        cmd.app->add_option("--seed", o->seed, "left-out set draw seed");
        cmd.app->add_option("--test-kappa", o->test_kappa, "mass ratio of the probed test state");
        cmd.app->add_option("--test-energy", o->test_energy, "target energy of the probed test state");
        cmd.app->add_option("--min-confidence", o->min_confidence, "required confidence of the probed state")
            ->check(CLI::Range(0.5, 1.0));
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        add_training_options(*cmd.app, o->train);
        cmd.run = [o](const ConfigMap& cfg) {
            check_model_dataset(o->model, o->dataset, false);
            const auto meta = verify_sidecar(o->model);
            for (const auto& key : training_keys()) {
                if (meta.config.count(key) && meta.config.at(key) != cfg.at(key)) {
                    throw FormatError("digest mismatch: training option '" + key + "' differs from the model (" +
                                      meta.config.at(key) + " vs " + cfg.at(key) + ")");
                }
            }
            const auto model = convnet::load_model(o->model);
            const auto d = imaging::read_dataset(o->dataset);
            const auto spectra = load_spectra(o->spectra);
            experiments::EnergyLookup energy_of = [&](const imaging::LabeledImage& r) {
                for (const auto& s : spectra) {
                    if (s.mass.inv_kappa() == r.inv_kappa && r.state_index < s.size()) return s.energies[r.state_index];
                }
                throw DomainError("no spectrum provides the energy of a dataset record");
            };
            const double inv = MassRatio::from_kappa(parse_kappa(o->test_kappa)).inv_kappa();
            const auto test = experiments::select_test_state(model, d, energy_of, inv, o->test_energy, o->min_confidence);
            if (!test) throw DomainError("no confidently classified test state at the requested mass ratio");
            std::clog << "# probe record " << *test << " energy " << energy_of(d.records[*test]) << "\n";
            auto betas = experiments::draw_betas(d, o->singletons, o->blocks, o->block_size, o->seed);
            const auto spec = o->train.spec(d.resolution);
            const auto results = experiments::leave_out_influence(
                d, spec, o->train.config(), model, *test, betas, energy_of,
                [&](std::size_t k, const experiments::InfluenceResult& r) {
                    std::fprintf(stderr, "beta %zu/%zu size %zu energy %.4f f1_diff %.3g\n", k + 1, betas.size(),
                                 r.beta.size(), r.beta_first_energy, r.difference());
                });
            std::vector<double> e, diff;
            for (const auto& r : results) {
                e.push_back(r.beta_first_energy);
                diff.push_back(std::abs(r.difference()));
            }
            finish(o->out, experiments::loo_csv(results), "experiment loo", cfg,
                   {{"model", file_digest(o->model)}, {"dataset", file_digest(o->dataset)}});
            if (results.size() >= 2) std::cout << "spearman_abs_diff_vs_energy " << stats::spearman(e, diff) << "\n";
        };
    }
    {  // attack
        struct Opts {
            std::string model, dataset, out, direction = "to-nonintegrable", pgm_dir;
            double step = 1e-3;
            int max_iters = 200;
            std::size_t limit = 0;
            bool allow_foreign = false;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ex, "attack", "Gradient-sign attack on correctly classified test states",
                               "experiment attack");
        cmd.app->add_option("--model", o->model, "QBN1 model")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--dataset", o->dataset, "QBD1 dataset (test split is attacked)")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--direction", o->direction, "to-nonintegrable or to-integrable")
            ->check(CLI::IsMember({"to-nonintegrable", "to-integrable"}));
        cmd.app->add_option("--step", o->step, "step relative to the image maximum")->check(CLI::NonNegativeNumber);
        cmd.app->add_option("--max-iters", o->max_iters, "iteration budget")->check(CLI::NonNegativeNumber);
        cmd.app->add_option("--limit", o->limit, "attack at most this many states (0 = all)");
        cmd.app->add_option("--pgm-dir", o->pgm_dir, "write original and perturbed images of successes here");
        cmd.app->add_option("--out", o->out, "output CSV")->required();
        cmd.app->add_flag("--allow-foreign-dataset", o->allow_foreign, "skip the model/dataset digest check");
        cmd.run = [o](const ConfigMap& cfg) {
            check_model_dataset(o->model, o->dataset, o->allow_foreign);
            const auto model = convnet::load_model(o->model);
            const auto d = imaging::read_dataset(o->dataset);
            convnet::require_input(model, d.resolution);
            const auto source = o->direction == "to-nonintegrable" ? imaging::Label::integrable : imaging::Label::non_integrable;
            const auto target = source == imaging::Label::integrable ? imaging::Label::non_integrable : imaging::Label::integrable;
            experiments::AttackOptions opts{o->step, o->max_iters};
            std::vector<experiments::AttackResult> results;
            std::size_t success = 0, within = 0;
            for (std::uint32_t i : d.test) {
                const auto& r = d.records[i];
                if (r.label != source || convnet::predict(model, r.grid).label() != source) continue;
                if (o->limit && results.size() >= o->limit) break;
                auto res = experiments::adversarial_attack(model, r.grid, target, opts);
                res.state_index = i;
                success += res.success;
                within += res.success && res.linf_rel <= 0.05;
                if (res.success && !o->pgm_dir.empty()) {
                    std::filesystem::create_directories(o->pgm_dir);
                    imaging::write_pgm(o->pgm_dir + "/record" + std::to_string(i) + "_before.pgm", r.grid);
                    imaging::write_pgm(o->pgm_dir + "/record" + std::to_string(i) + "_after.pgm", res.image);
                }
                res.image = {};
                results.push_back(std::move(res));
            }
            io::write_atomic(o->out, experiments::attack_csv(results));
            write_sidecar(o->out, "experiment attack", cfg,
                          {{"model", file_digest(o->model)}, {"dataset", file_digest(o->dataset)}});
            std::cout << "attacked " << results.size() << " flipped " << success << " flipped_within_0.05 " << within
                      << "\n";
        };
    }
}

}  // namespace qbill::cli
