#include "qbill/convnet/architecture.hpp"

#include <sstream>

#include "qbill/error.hpp"

namespace qbill::convnet {

namespace {

int conv_output(int in, const ConvSpec& c) {
    return c.padding == Padding::same ? in : in - c.kernel + 1;
}

void check_conv(const ConvSpec& c, const char* name) {
    if (c.filters < 1 || c.kernel < 1) {
        throw DomainError(std::string(name) + ": filters and kernel must be positive");
    }
    if (c.padding == Padding::same && c.kernel % 2 == 0) {
        throw DomainError(std::string(name) + ": same padding needs an odd kernel");
    }
}

LayerKind conv_kind(const ConvSpec& c) {
    return c.padding == Padding::same ? LayerKind::conv_same : LayerKind::conv_valid;
}

}  // namespace

int ArchitectureSpec::conv1_size() const { return conv_output(input, conv1); }
int ArchitectureSpec::conv2_size() const { return conv_output(pool1_size(), conv2); }

void ArchitectureSpec::validate() const {
    if (input < 2) {
        throw DomainError("network input must be at least 2x2");
    }
    check_conv(conv1, "conv1");
    check_conv(conv2, "conv2");
    if (dense1 < 1 || outputs != 2) {
        throw DomainError("dense widths must be positive and the output layer has 2 neurons");
    }
    if (conv1_size() < 2 || conv2_size() < 2) {
        throw DomainError("architecture collapses the feature maps below 2x2");
    }
}

std::size_t LayerShape::weight_count() const {
    switch (kind) {
        case LayerKind::conv_same:
        case LayerKind::conv_valid:
            return std::size_t{dims[0]} * dims[1] * dims[2] * dims[3];
        case LayerKind::dense:
            return std::size_t{dims[0]} * dims[1];
        case LayerKind::maxpool:
            return 0;
    }
    return 0;
}

std::size_t LayerShape::bias_count() const {
    return kind == LayerKind::maxpool ? 0 : dims[0];
}

std::vector<LayerShape> layer_shapes(const ArchitectureSpec& spec) {
    spec.validate();
    auto u = [](int v) { return static_cast<std::uint32_t>(v); };
    const LayerShape pool{LayerKind::maxpool, {2, 2, 0, 0}};
    return {
        {conv_kind(spec.conv1), {u(spec.conv1.filters), 1, u(spec.conv1.kernel), u(spec.conv1.kernel)}},
        pool,
        {conv_kind(spec.conv2),
         {u(spec.conv2.filters), u(spec.conv1.filters), u(spec.conv2.kernel), u(spec.conv2.kernel)}},
        pool,
        {LayerKind::dense, {u(spec.dense1), u(spec.flat_size()), 0, 0}},
        {LayerKind::dense, {u(spec.outputs), u(spec.dense1), 0, 0}},
    };
}

ArchitectureSpec spec_from_layers(int input, const std::vector<LayerShape>& layers) {
    if (layers.size() != 6) {
        throw FormatError("model must have exactly 6 layers");
    }
    auto conv = [](const LayerShape& l) {
        if (l.kind != LayerKind::conv_same && l.kind != LayerKind::conv_valid) {
            throw FormatError("expected a convolutional layer");
        }
        if (l.dims[2] != l.dims[3]) {
            throw FormatError("only square kernels are supported");
        }
        return ConvSpec{static_cast<int>(l.dims[0]), static_cast<int>(l.dims[2]),
                        l.kind == LayerKind::conv_same ? Padding::same : Padding::valid};
    };
    ArchitectureSpec spec;
    spec.input = input;
    spec.conv1 = conv(layers[0]);
    spec.conv2 = conv(layers[2]);
    if (layers[4].kind != LayerKind::dense) {
        throw FormatError("expected a dense layer");
    }
    spec.dense1 = static_cast<int>(layers[4].dims[0]);
    spec.outputs = static_cast<int>(layers[5].dims[0]);
    try {
        if (layer_shapes(spec) != layers) {
            throw FormatError("layer shapes are inconsistent with the topology");
        }
    } catch (const DomainError& e) {
        throw FormatError(std::string("invalid architecture: ") + e.what());
    }
    return spec;
}

std::string describe(const ArchitectureSpec& s) {
    auto pad = [](Padding p) { return p == Padding::same ? "same" : "valid"; };
    std::ostringstream o;
    o << s.input << "x" << s.input << " -> conv " << s.conv1.filters << "@" << s.conv1.kernel << "x"
      << s.conv1.kernel << " " << pad(s.conv1.padding) << " -> pool -> conv " << s.conv2.filters
      << "@" << s.conv2.kernel << "x" << s.conv2.kernel << " " << pad(s.conv2.padding)
      << " -> pool -> dense " << s.dense1 << " -> dense " << s.outputs;
    return o.str();
}

}  // namespace qbill::convnet
