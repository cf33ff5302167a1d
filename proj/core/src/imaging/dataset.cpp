#include "qbill/imaging/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "qbill/error.hpp"
#include "qbill/imaging/rasterize.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/io/binary.hpp"

namespace qbill::imaging {

Label label_for(MassRatio m) {
    return m.integrable() ? Label::integrable : Label::non_integrable;
}

std::string_view to_string(Label l) {
    return l == Label::integrable ? "integrable" : "non-integrable";
}

Split split_indices(std::size_t count, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
        throw DomainError("train fraction must lie in [0, 1]");
    }
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(count)));
    Split s;
    s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.test.begin(), s.test.end());
    return s;
}

void round_to_float(PixelGrid& g) {
    for (double& v : g.values) {
        v = static_cast<double>(static_cast<float>(v));
    }
}

Dataset build_dataset(std::span<const spectral::EigenSolution> solutions,
                      const DatasetOptions& options, const WarningSink& warn) {
    if (options.end_state <= options.first_state) {
        throw DomainError("dataset state range is empty");
    }
    if (solutions.empty()) {
        throw DomainError("dataset needs at least one eigen solution");
    }
    if (!resolves_state(options.resolution, options.end_state - 1)) {
        std::ostringstream msg;
        msg << "resolution " << options.resolution << " under-resolves state "
            << options.end_state - 1 << " (needs R >= 2 sqrt(N)); images will alias";
        if (warn) {
            warn(msg.str());
        } else {
            std::clog << "warning: " << msg.str() << '\n';
        }
    }

    std::vector<const spectral::EigenSolution*> ordered;
    for (const auto& s : solutions) {
        if (!s.has_coefficients()) {
            throw DomainError("dataset needs eigen solutions with coefficients");
        }
        if (s.size() < options.end_state || static_cast<std::size_t>(s.coefficients.rows()) < options.end_state) {
            std::ostringstream msg;
            msg << "kappa=" << s.mass.kappa() << " provides " << s.size() << " states, need "
                << options.end_state;
            throw DomainError(msg.str());
        }
        ordered.push_back(&s);
    }
    // kappa ascending == 1/kappa descending
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        return a->mass.inv_kappa() > b->mass.inv_kappa();
    });

    Dataset d;
    d.resolution = options.resolution;
    d.kind = options.kind;
    d.split_seed = options.split_seed;
    d.records.reserve(ordered.size() * (options.end_state - options.first_state));
    for (const auto* s : ordered) {
        const Rasterizer raster(s->cutoff, options.resolution);
        for (std::size_t n = options.first_state; n < options.end_state; ++n) {
            LabeledImage rec;
            rec.grid = raster.image(s->state(n), options.kind);
            round_to_float(rec.grid);
            rec.label = label_for(s->mass);
            rec.inv_kappa = s->mass.inv_kappa();
            rec.state_index = static_cast<std::uint32_t>(n);
            d.records.push_back(std::move(rec));
        }
    }
    Split split = split_indices(d.records.size(), options.train_fraction, options.split_seed);
    d.train = std::move(split.train);
    d.test = std::move(split.test);
    return d;
}

std::vector<std::uint8_t> encode_dataset(const Dataset& d) {
    io::ByteWriter w;
    w.magic("QBD1");
    w.u32(kDatasetVersion);
    w.u32(static_cast<std::uint32_t>(d.resolution));
    w.u32(static_cast<std::uint32_t>(d.records.size()));
    w.u8(static_cast<std::uint8_t>(d.kind));
    w.u64(d.split_seed);
    const std::size_t pixels = static_cast<std::size_t>(d.resolution) * static_cast<std::size_t>(d.resolution);
    for (const auto& r : d.records) {
        if (r.grid.values.size() != pixels) {
            throw ShapeError("dataset record does not match the dataset resolution");
        }
        w.u8(static_cast<std::uint8_t>(r.label));
        w.f64(r.inv_kappa);
        w.u32(r.state_index);
        for (double v : r.grid.values) {
            w.f32(static_cast<float>(v));
        }
    }
    for (const auto* list : {&d.train, &d.test}) {
        w.u32(static_cast<std::uint32_t>(list->size()));
        for (std::uint32_t i : *list) {
            w.u32(i);
        }
    }
    return std::move(w.bytes());
}

Dataset decode_dataset(std::span<const std::uint8_t> bytes) {
    io::ByteReader r(bytes, "dataset");
    r.expect_magic("QBD1");
    const std::uint32_t version = r.u32();
    if (version != kDatasetVersion) {
        throw FormatError("unsupported dataset version " + std::to_string(version));
    }
    Dataset d;
    const std::uint32_t res = r.u32();
    const std::uint32_t count = r.u32();
    const std::uint8_t kind = r.u8();
    if (res < 2 || res > 4096) {
        throw FormatError("dataset resolution out of range");
    }
    if (kind > 1) {
        throw FormatError("dataset kind must be 0 or 1");
    }
    d.resolution = static_cast<int>(res);
    d.kind = static_cast<GridKind>(kind);
    d.split_seed = r.u64();
    const std::size_t pixels = static_cast<std::size_t>(res) * res;
    const std::size_t record_bytes = 1 + 8 + 4 + 4 * pixels;
    if (r.remaining() / record_bytes < count) {
        throw FormatError("dataset: truncated records");
    }
    d.records.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        LabeledImage rec;
        const std::uint8_t label = r.u8();
        if (label > 1) {
            throw FormatError("dataset label must be 0 or 1");
        }
        rec.label = static_cast<Label>(label);
        rec.inv_kappa = r.f64();
        rec.state_index = r.u32();
        rec.grid = PixelGrid(d.resolution, d.kind);
        rec.grid.normalized = true;
        for (double& v : rec.grid.values) {
            v = r.f32();
        }
        d.records.push_back(std::move(rec));
    }
    std::vector<char> seen(count, 0);
    for (auto* list : {&d.train, &d.test}) {
        const std::uint32_t n = r.u32();
        if (r.remaining() / 4 < n) {
            throw FormatError("dataset: truncated split list");
        }
        list->resize(n);
        for (auto& i : *list) {
            i = r.u32();
            if (i >= count || seen[i]) {
                throw FormatError("dataset split is not a partition of the records");
            }
            seen[i] = 1;
        }
    }
    if (d.train.size() + d.test.size() != count) {
        throw FormatError("dataset split does not cover every record");
    }
    if (!r.at_end()) {
        throw FormatError("dataset: trailing bytes");
    }
    return d;
}

void write_dataset(const std::string& path, const Dataset& d) {
    io::write_atomic(path, encode_dataset(d));
}

Dataset read_dataset(const std::string& path) {
    return decode_dataset(io::read_file(path));
}

}  // namespace qbill::imaging
