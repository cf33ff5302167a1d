#include <cstdio>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "qbill/convnet/model_file.hpp"
#include "qbill/error.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/stats/csv.hpp"

namespace qbill::cli {

convnet::ArchitectureSpec TrainingOptions::spec(int input) const {
    convnet::ArchitectureSpec s;
    s.input = input;
    const auto pad = padding == "valid" ? convnet::Padding::valid : convnet::Padding::same;
    s.conv1 = {conv1_filters, conv1_kernel, pad};
    s.conv2 = {conv2_filters, conv2_kernel, pad};
    s.dense1 = dense;
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return s;
}

convnet::TrainingConfig TrainingOptions::config() const {
    convnet::TrainingConfig c;
    c.optimizer = convnet::parse_optimizer(optimizer);
    c.rate = rate;
    c.batch = batch;
    c.epochs = epochs;
    c.init_seed = init_seed;
    c.shuffle_seed = shuffle_seed;
    return c;
}

void add_training_options(CLI::App& app, TrainingOptions& o) {
    app.add_option("--epochs", o.epochs, "training epochs")->check(CLI::Range(1, 100000));
    app.add_option("--batch", o.batch, "mini-batch size")->check(CLI::Range(1ul, 1ul << 20));
    app.add_option("--rate", o.rate, "learning rate")->check(CLI::PositiveNumber);
    app.add_option("--optimizer", o.optimizer, "adam or sgd")->check(CLI::IsMember({"adam", "sgd"}));
    app.add_option("--init-seed", o.init_seed, "weight initialization seed");
    app.add_option("--shuffle-seed", o.shuffle_seed, "mini-batch shuffle seed");
    app.add_option("--conv1-filters", o.conv1_filters, "first convolution filters")->check(CLI::PositiveNumber);
    app.add_option("--conv1-kernel", o.conv1_kernel, "first convolution kernel")->check(CLI::PositiveNumber);
    app.add_option("--conv2-filters", o.conv2_filters, "second convolution filters")->check(CLI::PositiveNumber);
    app.add_option("--conv2-kernel", o.conv2_kernel, "second convolution kernel")->check(CLI::PositiveNumber);
    app.add_option("--padding", o.padding, "same or valid")->check(CLI::IsMember({"same", "valid"}));
    app.add_option("--dense", o.dense, "hidden dense width")->check(CLI::PositiveNumber);
}

const std::vector<std::string>& training_keys() {
    static const std::vector<std::string> keys{"epochs",        "batch",        "rate",          "optimizer",
                                               "init-seed",     "shuffle-seed", "conv1-filters", "conv1-kernel",
                                               "conv2-filters", "conv2-kernel", "padding",       "dense"};
    return keys;
}

void check_model_dataset(const std::string& model, const std::string& dataset, bool allow_foreign) {
    const auto model_meta = verify_sidecar(model);
    verify_sidecar(dataset);
    if (!allow_foreign && model_meta.inputs.count("dataset") && model_meta.inputs.at("dataset") != file_digest(dataset)) {
        throw FormatError("digest mismatch: model " + model + " was trained on a different dataset than " + dataset +
                          " (use --allow-foreign-dataset to proceed anyway)");
    }
}

namespace {

std::string optional_cell(const std::optional<double>& v) { return v ? stats::format_number(*v) : "absent"; }

}  // namespace

void register_train(CLI::App& app, Registry& reg) {
    {
        struct Opts {
            std::string dataset, out, history;
            TrainingOptions train;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(app, "train", "Train the classifier on a QBD1 dataset", "train");
        cmd.app->add_option("--dataset", o->dataset, "QBD1 dataset")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--out", o->out, "output QBN1 model")->required();
        cmd.app->add_option("--history", o->history, "per-epoch CSV (epoch,loss,train_acc,test_acc)");
        add_training_options(*cmd.app, o->train);
        cmd.run = [o](const ConfigMap& cfg) {
            verify_sidecar(o->dataset);
            const auto d = imaging::read_dataset(o->dataset);
            const auto spec = o->train.spec(d.resolution);
            std::clog << "# " << convnet::describe(spec) << "\n";
            const auto result = convnet::train(d, spec, o->train.config(), [](const convnet::EpochStats& e) {
                std::fprintf(stderr, "epoch %3d loss %.5f train_acc %.4f test_acc %s\n", e.epoch, e.loss,
                             e.train_accuracy, e.test_accuracy ? std::to_string(*e.test_accuracy).c_str() : "-");
            });
            convnet::save_model(result.params, o->out);
            write_sidecar(o->out, "train", cfg, {{"dataset", file_digest(o->dataset)}});
            if (!o->history.empty()) {
                std::string csv = "epoch,loss,train_acc,test_acc\n";
                for (const auto& e : result.history) {
                    csv += std::to_string(e.epoch) + "," + stats::format_number(e.loss) + "," +
                           stats::format_number(e.train_accuracy) + "," +
                           (e.test_accuracy ? stats::format_number(*e.test_accuracy) : "") + "\n";
                }
                io::write_atomic(o->history, csv);
            }
            const auto& last = result.history.back();
            std::cout << "test_accuracy " << (last.test_accuracy ? stats::format_number(*last.test_accuracy) : "-")
                      << "\n";
        };
    }
    {
        struct Opts {
            std::string model, dataset, split = "test", out;
            bool allow_foreign = false;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(app, "eval", "Evaluate a model on a dataset split", "eval");
        cmd.app->add_option("--model", o->model, "QBN1 model")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--dataset", o->dataset, "QBD1 dataset")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--split", o->split, "test, train or all")->check(CLI::IsMember({"test", "train", "all"}));
        cmd.app->add_option("--out", o->out, "per-record CSV (record,label,b1,b2,predicted)");
        cmd.app->add_flag("--allow-foreign-dataset", o->allow_foreign, "skip the model/dataset digest check");
        cmd.run = [o](const ConfigMap& cfg) {
            check_model_dataset(o->model, o->dataset, o->allow_foreign);
            const std::string dataset_digest = file_digest(o->dataset);
            const auto model = convnet::load_model(o->model);
            const auto d = imaging::read_dataset(o->dataset);
            convnet::require_input(model, d.resolution);
            std::vector<std::uint32_t> idx;
            if (o->split == "test") idx = d.test;
            else if (o->split == "train") idx = d.train;
            else for (std::uint32_t i = 0; i < d.size(); ++i) idx.push_back(i);
            const auto e = convnet::evaluate(model, d.records, idx);
            std::cout << "records " << e.count << " accuracy " << stats::format_number(e.accuracy)
                      << " acc_integrable " << optional_cell(e.class_accuracy[0]) << " acc_nonintegrable "
                      << optional_cell(e.class_accuracy[1]) << "\n"
                      << "confusion true\\pred integrable non-integrable\n"
                      << "  integrable " << e.confusion[0][0] << " " << e.confusion[0][1] << "\n"
                      << "  non-integrable " << e.confusion[1][0] << " " << e.confusion[1][1] << "\n";
            if (!o->out.empty()) {
                std::string csv = "record,inv_kappa,state_index,label,b1,b2,predicted\n";
                for (std::size_t k = 0; k < idx.size(); ++k) {
                    const auto& r = d.records[idx[k]];
                    const auto& p = e.predictions[k];
                    csv += std::to_string(idx[k]) + "," + stats::format_number(r.inv_kappa) + "," +
                           std::to_string(r.state_index) + "," + std::to_string(static_cast<int>(r.label)) + "," +
                           stats::format_number(p.b1) + "," + stats::format_number(p.b2) + "," +
                           std::to_string(static_cast<int>(p.label())) + "\n";
                }
                io::write_atomic(o->out, csv);
                write_sidecar(o->out, "eval", cfg, {{"model", file_digest(o->model)}, {"dataset", dataset_digest}});
            }
        };
    }
}

}  // namespace qbill::cli
