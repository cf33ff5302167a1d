#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbill/imaging/pixel_grid.hpp"
#include "qbill/spectral/eigen_solution.hpp"
#include "qbill/spectral/mass_ratio.hpp"

namespace qbill::imaging {

enum class Label : std::uint8_t { integrable = 0, non_integrable = 1 };

/// Integrable iff 1/kappa is 0 or 1.
Label label_for(MassRatio m);
std::string_view to_string(Label l);

struct LabeledImage {
    PixelGrid grid;
    Label label = Label::integrable;
    double inv_kappa = 1.0;
    std::uint32_t state_index = 0;
};

struct Dataset {
    int resolution = 0;
    GridKind kind = GridKind::density;
    std::uint64_t split_seed = 0;
    std::vector<LabeledImage> records;
    std::vector<std::uint32_t> train;  // ascending record indices
    std::vector<std::uint32_t> test;

    std::size_t size() const { return records.size(); }
};

struct Split {
    std::vector<std::uint32_t> train;
    std::vector<std::uint32_t> test;
};

/// Shuffles 0..count-1 with mt19937_64(seed) and puts the first
/// round(train_fraction * count) into the train list. Both lists are
/// returned sorted.
Split split_indices(std::size_t count, double train_fraction, std::uint64_t seed);

struct DatasetOptions {
    std::size_t first_state = 50;  // half-open [first_state, end_state)
    std::size_t end_state = 1050;
    int resolution = 64;
    GridKind kind = GridKind::density;
    std::uint64_t split_seed = 0;
    double train_fraction = 0.85;
};

using WarningSink = std::function<void(const std::string&)>;

/// Rasterizes states [first_state, end_state) of every solution. Records are
/// ordered by kappa ascending, then state index; pixel values are rounded to
/// f32 so in-memory and on-disk datasets agree. Warns (via `warn`, or
/// std::clog when empty) when the resolution cannot resolve the last state.
Dataset build_dataset(std::span<const spectral::EigenSolution> solutions,
                      const DatasetOptions& options, const WarningSink& warn = {});

/// Rounds every pixel to the nearest f32.
void round_to_float(PixelGrid& g);

// QBD1 dataset file, little-endian:
//   "QBD1" | version u32 | R u32 | count u32 | kind u8 | split_seed u64
//   | count x {label u8 | inv_kappa f64 | state_index u32 | pixels f32[R*R]}
//   | n_train u32 | train u32[n_train] | n_test u32 | test u32[n_test]
inline constexpr std::uint32_t kDatasetVersion = 1;

std::vector<std::uint8_t> encode_dataset(const Dataset& d);
Dataset decode_dataset(std::span<const std::uint8_t> bytes);
void write_dataset(const std::string& path, const Dataset& d);
Dataset read_dataset(const std::string& path);

}  // namespace qbill::imaging
