#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qbill::convnet {

enum class Padding : std::uint8_t { same, valid };

struct ConvSpec {
    int filters = 16;
    int kernel = 3;
    Padding padding = Padding::same;

    bool operator==(const ConvSpec&) const = default;
};

/// conv -> pool -> conv -> pool -> dense -> dense, ReLU on every hidden layer
/// and softmax on the two outputs. Pools are 2x2 with stride 2.
struct ArchitectureSpec {
    int input = 64;
    ConvSpec conv1{16, 3, Padding::same};
    ConvSpec conv2{32, 3, Padding::same};
    int dense1 = 128;
    int outputs = 2;

    /// Throws DomainError when any spatial size collapses or a kernel is invalid.
    void validate() const;

    int conv1_size() const;
    int pool1_size() const { return conv1_size() / 2; }
    int conv2_size() const;
    int pool2_size() const { return conv2_size() / 2; }
    int flat_size() const { return conv2.filters * pool2_size() * pool2_size(); }

    bool operator==(const ArchitectureSpec&) const = default;
};

/// Layer records as stored in model files.
enum class LayerKind : std::uint8_t { conv_same = 1, conv_valid = 2, maxpool = 3, dense = 4 };

struct LayerShape {
    LayerKind kind = LayerKind::dense;
    // conv: {filters, in_channels, kernel, kernel}; pool: {2, 2, 0, 0}; dense: {out, in, 0, 0}
    std::array<std::uint32_t, 4> dims{};

    std::size_t weight_count() const;
    std::size_t bias_count() const;
    bool operator==(const LayerShape&) const = default;
};

std::vector<LayerShape> layer_shapes(const ArchitectureSpec& spec);

/// Inverse of layer_shapes; throws FormatError for layer lists that do not
/// follow the fixed topology.
ArchitectureSpec spec_from_layers(int input, const std::vector<LayerShape>& layers);

std::string describe(const ArchitectureSpec& spec);

}  // namespace qbill::convnet
