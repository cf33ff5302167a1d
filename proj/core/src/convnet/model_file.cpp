#include "qbill/convnet/model_file.hpp"

#include "qbill/error.hpp"
#include "qbill/io/atomic_file.hpp"
#include "qbill/io/binary.hpp"

namespace qbill::convnet {

namespace {

bool is_conv(LayerKind k) { return k == LayerKind::conv_same || k == LayerKind::conv_valid; }

// file order [f][c][ky][kx] <-> in-memory column (ky*k + kx)*C + c
Eigen::Index conv_column(const LayerShape& s, std::uint32_t c, std::uint32_t ky, std::uint32_t kx) {
    return static_cast<Eigen::Index>((ky * s.dims[3] + kx) * s.dims[1] + c);
}

}  // namespace

std::vector<std::uint8_t> encode_model(const Parameters<float>& p) {
    io::ByteWriter w;
    w.magic("QBN1");
    w.u32(kModelVersion);
    w.u32(static_cast<std::uint32_t>(p.spec.input));
    w.u32(static_cast<std::uint32_t>(p.layers.size()));
    for (const auto& l : p.layers) {
        const auto& s = l.shape;
        w.u8(static_cast<std::uint8_t>(s.kind));
        for (std::uint32_t d : s.dims) w.u32(d);
        if (is_conv(s.kind)) {
            for (std::uint32_t f = 0; f < s.dims[0]; ++f)
                for (std::uint32_t c = 0; c < s.dims[1]; ++c)
                    for (std::uint32_t ky = 0; ky < s.dims[2]; ++ky)
                        for (std::uint32_t kx = 0; kx < s.dims[3]; ++kx)
                            w.f32(l.weights(f, conv_column(s, c, ky, kx)));
        } else if (s.kind == LayerKind::dense) {
            for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
                for (Eigen::Index c = 0; c < l.weights.cols(); ++c) w.f32(l.weights(r, c));
        }
        for (Eigen::Index k = 0; k < l.bias.size(); ++k) w.f32(l.bias(k));
    }
    auto& bytes = w.bytes();
    const std::uint32_t crc = io::crc32(std::span<const std::uint8_t>(bytes).subspan(4));
    w.u32(crc);
    return std::move(w.bytes());
}

Parameters<float> decode_model(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) {
        throw FormatError("model file truncated");
    }
    io::ByteReader crc_reader(bytes.subspan(bytes.size() - 4), "model");
    const std::uint32_t stored = crc_reader.u32();
    const auto payload = bytes.subspan(4, bytes.size() - 8);
    io::ByteReader r(bytes.first(bytes.size() - 4), "model");
    r.expect_magic("QBN1");
    if (io::crc32(payload) != stored) {
        throw FormatError("model checksum mismatch (corrupt or truncated file)");
    }
    const std::uint32_t version = r.u32();
    if (version != kModelVersion) {
        throw FormatError("unsupported model version " + std::to_string(version));
    }
    const std::uint32_t input = r.u32();
    const std::uint32_t count = r.u32();
    if (count != 6 || input < 2 || input > 4096) {
        throw FormatError("model header describes an unsupported network");
    }
    std::vector<LayerShape> shapes;
    std::vector<std::vector<float>> weights, biases;
    for (std::uint32_t k = 0; k < count; ++k) {
        LayerShape s;
        const std::uint8_t kind = r.u8();
        if (kind < 1 || kind > 4) throw FormatError("unknown layer kind " + std::to_string(kind));
        s.kind = static_cast<LayerKind>(kind);
        for (auto& d : s.dims) d = r.u32();
        if (s.weight_count() > r.remaining() / 4) throw FormatError("model file truncated");
        std::vector<float> wv(s.weight_count()), bv(s.bias_count());
        for (float& v : wv) v = r.f32();
        for (float& v : bv) v = r.f32();
        shapes.push_back(s);
        weights.push_back(std::move(wv));
        biases.push_back(std::move(bv));
    }
    if (!r.at_end()) {
        throw FormatError("model file has trailing bytes");
    }
    Parameters<float> p = Parameters<float>::zeros(spec_from_layers(static_cast<int>(input), shapes));
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        auto& l = p.layers[k];
        const auto& s = shapes[k];
        std::size_t pos = 0;
        if (is_conv(s.kind)) {
            for (std::uint32_t f = 0; f < s.dims[0]; ++f)
                for (std::uint32_t c = 0; c < s.dims[1]; ++c)
                    for (std::uint32_t ky = 0; ky < s.dims[2]; ++ky)
                        for (std::uint32_t kx = 0; kx < s.dims[3]; ++kx)
                            l.weights(f, conv_column(s, c, ky, kx)) = weights[k][pos++];
        } else if (s.kind == LayerKind::dense) {
            for (Eigen::Index i = 0; i < l.weights.rows(); ++i)
                for (Eigen::Index j = 0; j < l.weights.cols(); ++j) l.weights(i, j) = weights[k][pos++];
        }
        for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias(i) = biases[k][static_cast<std::size_t>(i)];
    }
    return p;
}

void save_model(const Parameters<float>& p, const std::string& path) {
    io::write_atomic(path, encode_model(p));
}

Parameters<float> load_model(const std::string& path) {
    return decode_model(io::read_file(path));
}

void require_input(const Parameters<float>& p, int resolution) {
    if (p.spec.input != resolution) {
        throw ShapeError("model expects " + std::to_string(p.spec.input) + "x" + std::to_string(p.spec.input) +
                         " inputs, got " + std::to_string(resolution) + "x" + std::to_string(resolution));
    }
}

}  // namespace qbill::convnet
