#include <iostream>
#include <memory>

#include "commands.hpp"
#include "qbill/error.hpp"
#include "qbill/imaging/dataset.hpp"
#include "qbill/imaging/pgm.hpp"

namespace qbill::cli {

imaging::GridKind parse_kind(const std::string& s) {
    if (s == "density") return imaging::GridKind::density;
    if (s == "wavefunction") return imaging::GridKind::wavefunction;
    throw UsageError("kind must be density or wavefunction");
}

void register_dataset(CLI::App& app, Registry& reg) {
    CLI::App* ds = app.add_subcommand("dataset", "Labeled image datasets");
    ds->require_subcommand(1);
    {
        struct Opts {
            std::vector<std::string> spectra;
            std::string out, kind = "density";
            std::size_t first = 50, end = 1050;
            int resolution = 64;
            std::uint64_t seed = 2024;
            double train_fraction = 0.85;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ds, "build", "Rasterize eigenstates into a QBD1 dataset", "dataset build");
        cmd.app->add_option("--spectra", o->spectra, "QBS1 spectra with coefficients")->delimiter(',')->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--first", o->first, "first state index (inclusive)");
        cmd.app->add_option("--end", o->end, "last state index (exclusive)");
        cmd.app->add_option("--resolution", o->resolution, "raster resolution R")->check(CLI::Range(2, 4096));
        cmd.app->add_option("--kind", o->kind, "density or wavefunction")->check(CLI::IsMember({"density", "wavefunction"}));
        cmd.app->add_option("--split-seed", o->seed, "train/test split seed");
        cmd.app->add_option("--train-fraction", o->train_fraction, "train share")->check(CLI::Range(0.0, 1.0));
        cmd.app->add_option("--out", o->out, "output QBD1 file")->required();
        add_preset(cmd, [](const std::string& p) {
            return ConfigMap{{"first", "50"}, {"end", p == "fast" ? "300" : "1050"}};
        });
        cmd.run = [o](const ConfigMap& cfg) {
            const auto spectra = load_spectra(o->spectra);
            imaging::DatasetOptions opts;
            opts.first_state = o->first;
            opts.end_state = o->end;
            opts.resolution = o->resolution;
            opts.kind = parse_kind(o->kind);
            opts.split_seed = o->seed;
            opts.train_fraction = o->train_fraction;
            const auto d = imaging::build_dataset(spectra, opts, [](const std::string& w) {
                std::cerr << "warning: " << w << "\n";
            });
            imaging::write_dataset(o->out, d);
            std::map<std::string, std::string> inputs;
            for (const auto& p : o->spectra) inputs[p] = file_digest(p);
            write_sidecar(o->out, "dataset build", cfg, inputs);
            std::size_t integrable = 0;
            for (const auto& r : d.records) integrable += r.label == imaging::Label::integrable;
            std::cout << "records " << d.size() << " train " << d.train.size() << " test " << d.test.size()
                      << " integrable " << integrable << "\n";
        };
    }
    {
        struct Opts {
            std::string dataset, out;
            std::size_t index = 0;
        };
        auto o = std::make_shared<Opts>();
        Command& cmd = reg.add(*ds, "export", "Write one dataset image as an 8-bit PGM", "dataset export");
        cmd.app->add_option("--dataset", o->dataset, "QBD1 file")->required()->check(CLI::ExistingFile);
        cmd.app->add_option("--index", o->index, "record index");
        cmd.app->add_option("--out", o->out, "output PGM")->required();
        cmd.run = [o](const ConfigMap&) {
            verify_sidecar(o->dataset);
            const auto d = imaging::read_dataset(o->dataset);
            if (o->index >= d.size()) throw UsageError("record index out of range");
            imaging::write_pgm(o->out, d.records[o->index].grid);
            const auto& r = d.records[o->index];
            std::cout << "record " << o->index << " inv_kappa " << r.inv_kappa << " state " << r.state_index << " "
                      << imaging::to_string(r.label) << "\n";
        };
    }
}

}  // namespace qbill::cli
