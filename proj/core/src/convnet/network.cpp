#include "qbill/convnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "qbill/error.hpp"

namespace qbill::convnet {

namespace {

// Spatial side and channel count entering each layer.
struct Geometry {
    std::vector<int> side;
    std::vector<int> channels;
};

Geometry geometry(const ArchitectureSpec& s) {
    return {{s.input, s.conv1_size(), s.pool1_size(), s.conv2_size(), s.pool2_size(), 1, 1},
            {1, s.conv1.filters, s.conv1.filters, s.conv2.filters, s.conv2.filters, 1, 1}};
}

bool is_conv(LayerKind k) { return k == LayerKind::conv_same || k == LayerKind::conv_valid; }

template <class T>
void im2col(const Matrix<T>& in, int channels, int side, int batch, int kernel, int pad, int out_side,
            Matrix<T>& cols) {
    const Eigen::Index in_px = static_cast<Eigen::Index>(side) * side;
    const Eigen::Index out_px = static_cast<Eigen::Index>(out_side) * out_side;
    cols.setZero(static_cast<Eigen::Index>(kernel) * kernel * channels, batch * out_px);
    const T* src = in.data();
    T* dst = cols.data();
    const Eigen::Index rows = cols.rows();
    for (int b = 0; b < batch; ++b) {
        for (int oy = 0; oy < out_side; ++oy) {
            for (int ox = 0; ox < out_side; ++ox) {
                const Eigen::Index col = b * out_px + oy * out_side + ox;
                for (int ky = 0; ky < kernel; ++ky) {
                    const int iy = oy + ky - pad;
                    if (iy < 0 || iy >= side) continue;
                    for (int kx = 0; kx < kernel; ++kx) {
                        const int ix = ox + kx - pad;
                        if (ix < 0 || ix >= side) continue;
                        const Eigen::Index s = b * in_px + iy * side + ix;
                        std::memcpy(dst + col * rows + (ky * kernel + kx) * channels,
                                    src + s * channels, sizeof(T) * static_cast<std::size_t>(channels));
                    }
                }
            }
        }
    }
}

template <class T>
void col2im(const Matrix<T>& cols, int channels, int side, int batch, int kernel, int pad, int out_side,
            Matrix<T>& in_grad) {
    const Eigen::Index in_px = static_cast<Eigen::Index>(side) * side;
    const Eigen::Index out_px = static_cast<Eigen::Index>(out_side) * out_side;
    in_grad.setZero(channels, batch * in_px);
    const T* src = cols.data();
    T* dst = in_grad.data();
    const Eigen::Index rows = cols.rows();
    for (int b = 0; b < batch; ++b) {
        for (int oy = 0; oy < out_side; ++oy) {
            for (int ox = 0; ox < out_side; ++ox) {
                const Eigen::Index col = b * out_px + oy * out_side + ox;
                for (int ky = 0; ky < kernel; ++ky) {
                    const int iy = oy + ky - pad;
                    if (iy < 0 || iy >= side) continue;
                    for (int kx = 0; kx < kernel; ++kx) {
                        const int ix = ox + kx - pad;
                        if (ix < 0 || ix >= side) continue;
                        const T* g = src + col * rows + (ky * kernel + kx) * channels;
                        T* d = dst + (b * in_px + iy * side + ix) * channels;
                        for (int c = 0; c < channels; ++c) {
                            d[c] += g[c];
                        }
                    }
                }
            }
        }
    }
}

// 2x2 stride-2 max pool; argmax holds the flat source offset of each output
// element, ties resolved to the first maximum in scan order.
template <class T>
void maxpool(const Matrix<T>& in, int channels, int side, int batch, Matrix<T>& out,
             std::vector<std::int32_t>& argmax) {
    const int os = side / 2;
    const Eigen::Index in_px = static_cast<Eigen::Index>(side) * side;
    const Eigen::Index out_px = static_cast<Eigen::Index>(os) * os;
    out.resize(channels, batch * out_px);
    argmax.resize(static_cast<std::size_t>(out.size()));
    const T* src = in.data();
    T* dst = out.data();
    for (int b = 0; b < batch; ++b) {
        for (int oy = 0; oy < os; ++oy) {
            for (int ox = 0; ox < os; ++ox) {
                const Eigen::Index ocol = b * out_px + oy * os + ox;
                const Eigen::Index base = b * in_px + (2 * oy) * side + 2 * ox;
                const Eigen::Index cand[4] = {base, base + 1, base + side, base + side + 1};
                for (int c = 0; c < channels; ++c) {
                    Eigen::Index best = cand[0] * channels + c;
                    for (int q = 1; q < 4; ++q) {
                        const Eigen::Index k = cand[q] * channels + c;
                        if (src[k] > src[best]) best = k;
                    }
                    const Eigen::Index o = ocol * channels + c;
                    dst[o] = src[best];
                    argmax[static_cast<std::size_t>(o)] = static_cast<std::int32_t>(best);
                }
            }
        }
    }
}

template <class T>
void relu(Matrix<T>& m) {
    m = m.cwiseMax(T(0));
}

template <class T>
struct Cache {
    std::vector<Matrix<T>> input;  // input of layer l (post-activation of l-1)
    std::vector<Matrix<T>> cols;   // im2col of conv inputs
    std::vector<std::vector<std::int32_t>> argmax;
    Matrix<T> output;              // logits
};

template <class T>
void check_params(const Parameters<T>& p) {
    if (p.layers.size() != 6) {
        throw ShapeError("network parameters must have 6 layers");
    }
    const auto shapes = layer_shapes(p.spec);
    for (std::size_t l = 0; l < shapes.size(); ++l) {
        const auto& L = p.layers[l];
        if (!(L.shape == shapes[l]) || static_cast<std::size_t>(L.weights.size()) != shapes[l].weight_count() ||
            static_cast<std::size_t>(L.bias.size()) != shapes[l].bias_count()) {
            throw ShapeError("network parameters do not match the architecture");
        }
    }
}

template <class T>
void forward(const Parameters<T>& p, const Matrix<T>& batch_input, Cache<T>& cache) {
    check_params(p);
    const auto& s = p.spec;
    const Eigen::Index px = static_cast<Eigen::Index>(s.input) * s.input;
    if (batch_input.rows() != 1 || batch_input.cols() % px != 0 || batch_input.cols() == 0) {
        throw ShapeError("network input does not match the " + std::to_string(s.input) + "x" +
                         std::to_string(s.input) + " architecture");
    }
    const int batch = static_cast<int>(batch_input.cols() / px);
    const Geometry g = geometry(s);
    cache.input.assign(6, Matrix<T>());
    cache.cols.assign(6, Matrix<T>());
    cache.argmax.assign(6, {});
    Matrix<T> current = batch_input;
    for (std::size_t l = 0; l < 6; ++l) {
        const auto& L = p.layers[l];
        cache.input[l] = std::move(current);
        const Matrix<T>& in = cache.input[l];
        if (is_conv(L.shape.kind)) {
            const int k = static_cast<int>(L.shape.dims[2]);
            const int pad = L.shape.kind == LayerKind::conv_same ? k / 2 : 0;
            im2col(in, g.channels[l], g.side[l], batch, k, pad, g.side[l + 1], cache.cols[l]);
            current.noalias() = L.weights * cache.cols[l];
            current.colwise() += L.bias;
            relu(current);
        } else if (L.shape.kind == LayerKind::maxpool) {
            maxpool(in, g.channels[l], g.side[l], batch, current, cache.argmax[l]);
        } else {
            const Eigen::Index rows = in.size() / batch;
            const Eigen::Map<const Matrix<T>> flat(in.data(), rows, batch);
            current.noalias() = L.weights * flat;
            current.colwise() += L.bias;
            if (l + 1 < 6) relu(current);
        }
    }
    cache.output = std::move(current);
}

}  // namespace

template <class T>
Parameters<T> Parameters<T>::zeros(const ArchitectureSpec& spec) {
    Parameters<T> p;
    p.spec = spec;
    for (const auto& shape : layer_shapes(spec)) {
        Layer<T> l;
        l.shape = shape;
        if (shape.kind != LayerKind::maxpool) {
            l.weights = Matrix<T>::Zero(shape.dims[0], static_cast<Eigen::Index>(shape.weight_count() / shape.dims[0]));
            l.bias = Vector<T>::Zero(shape.dims[0]);
        }
        p.layers.push_back(std::move(l));
    }
    return p;
}

template <class T>
Parameters<T> Parameters<T>::he_init(const ArchitectureSpec& spec, std::uint64_t seed) {
    Parameters<T> p = zeros(spec);
    std::mt19937_64 rng(seed);
    for (auto& l : p.layers) {
        if (l.weights.size() == 0) continue;
        std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / static_cast<double>(l.weights.cols())));
        // row-major draw order so the stream does not depend on storage order
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
                l.weights(r, c) = static_cast<T>(normal(rng));
            }
        }
    }
    return p;
}

template <class T>
std::size_t Parameters<T>::count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
    return n;
}

template <class T>
Matrix<T> pack_images(std::span<const imaging::PixelGrid* const> images, int resolution) {
    const Eigen::Index px = static_cast<Eigen::Index>(resolution) * resolution;
    Matrix<T> m(1, px * static_cast<Eigen::Index>(images.size()));
    for (std::size_t b = 0; b < images.size(); ++b) {
        const auto& g = *images[b];
        if (g.resolution != resolution) {
            throw ShapeError("image resolution " + std::to_string(g.resolution) +
                             " does not match network input " + std::to_string(resolution));
        }
        for (Eigen::Index k = 0; k < px; ++k) {
            m(0, static_cast<Eigen::Index>(b) * px + k) = static_cast<T>(g.values[static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

template <class T>
Matrix<T> logits(const Parameters<T>& p, const Matrix<T>& batch) {
    Cache<T> cache;
    forward(p, batch, cache);
    return cache.output;
}

Prediction prediction_from_logits(double z1, double z2) {
    const double m = std::max(z1, z2);
    const double e1 = std::exp(z1 - m);
    const double e2 = std::exp(z2 - m);
    return {e1 / (e1 + e2), e2 / (e1 + e2)};
}

template <class T>
Prediction predict(const Parameters<T>& p, const imaging::PixelGrid& image) {
    const imaging::PixelGrid* ptr = &image;
    return predict(p, std::span<const imaging::PixelGrid* const>(&ptr, 1)).front();
}

template <class T>
std::vector<Prediction> predict(const Parameters<T>& p, std::span<const imaging::PixelGrid* const> images,
                                std::size_t batch) {
    std::vector<Prediction> out;
    out.reserve(images.size());
    batch = std::max<std::size_t>(batch, 1);
    for (std::size_t i = 0; i < images.size(); i += batch) {
        const auto chunk = images.subspan(i, std::min(batch, images.size() - i));
        const Matrix<T> z = logits(p, pack_images<T>(chunk, p.spec.input));
        for (Eigen::Index b = 0; b < z.cols(); ++b) {
            out.push_back(prediction_from_logits(static_cast<double>(z(0, b)), static_cast<double>(z(1, b))));
        }
    }
    return out;
}

template <class T>
LossOutput loss_and_gradient(const Parameters<T>& p, const Matrix<T>& batch_input,
                             std::span<const Label> labels, Parameters<T>* grads, Matrix<T>* input_grad) {
    Cache<T> cache;
    forward(p, batch_input, cache);
    const Eigen::Index batch = cache.output.cols();
    if (static_cast<std::size_t>(batch) != labels.size()) {
        throw ShapeError("label count does not match the batch");
    }

    // softmax cross-entropy in double
    LossOutput result;
    Matrix<T> delta(2, batch);
    for (Eigen::Index b = 0; b < batch; ++b) {
        const double z1 = static_cast<double>(cache.output(0, b));
        const double z2 = static_cast<double>(cache.output(1, b));
        const double m = std::max(z1, z2);
        const double lse = m + std::log(std::exp(z1 - m) + std::exp(z2 - m));
        const int y = labels[static_cast<std::size_t>(b)] == Label::integrable ? 0 : 1;
        result.loss += lse - (y == 0 ? z1 : z2);
        const Prediction pr = prediction_from_logits(z1, z2);
        if (pr.label() == labels[static_cast<std::size_t>(b)]) ++result.correct;
        delta(0, b) = static_cast<T>((std::exp(z1 - lse) - (y == 0 ? 1.0 : 0.0)) / static_cast<double>(batch));
        delta(1, b) = static_cast<T>((std::exp(z2 - lse) - (y == 1 ? 1.0 : 0.0)) / static_cast<double>(batch));
    }
    result.loss /= static_cast<double>(batch);
    if (!grads && !input_grad) {
        return result;
    }

    if (grads) {
        *grads = Parameters<T>::zeros(p.spec);
    }
    const Geometry g = geometry(p.spec);
    const int nb = static_cast<int>(batch);
    Matrix<T> d = std::move(delta);  // gradient wrt the output of layer l (post-activation)
    for (std::size_t l = 6; l-- > 0;) {
        const auto& L = p.layers[l];
        const Matrix<T>& in = cache.input[l];
        const bool need_input = l > 0 || input_grad;
        if (is_conv(L.shape.kind)) {
            // d currently holds dA; mask by the ReLU (A > 0 iff Z > 0)
            const Matrix<T>& a = cache.input[l + 1];
            d = (a.array() > T(0)).select(d, T(0));
            if (grads) {
                auto& G = grads->layers[l];
                G.weights.noalias() = d * cache.cols[l].transpose();
                G.bias = d.rowwise().sum();
            }
            if (need_input) {
                const int k = static_cast<int>(L.shape.dims[2]);
                const int pad = L.shape.kind == LayerKind::conv_same ? k / 2 : 0;
                const Matrix<T> dcols = L.weights.transpose() * d;
                col2im(dcols, g.channels[l], g.side[l], nb, k, pad, g.side[l + 1], d);
            }
        } else if (L.shape.kind == LayerKind::maxpool) {
            Matrix<T> din = Matrix<T>::Zero(in.rows(), in.cols());
            const auto& am = cache.argmax[l];
            for (std::size_t k = 0; k < am.size(); ++k) {
                din.data()[am[k]] += d.data()[k];
            }
            d = std::move(din);
        } else {
            if (l + 1 < 6) {
                const Matrix<T>& a = cache.input[l + 1];
                d = (a.array() > T(0)).select(d, T(0));
            }
            const Eigen::Index rows = in.size() / batch;
            const Eigen::Map<const Matrix<T>> flat(in.data(), rows, batch);
            if (grads) {
                auto& G = grads->layers[l];
                G.weights.noalias() = d * flat.transpose();
                G.bias = d.rowwise().sum();
            }
            Matrix<T> dflat = L.weights.transpose() * d;
            d = Eigen::Map<Matrix<T>>(dflat.data(), in.rows(), in.cols());
        }
    }
    if (input_grad) {
        *input_grad = std::move(d);
    }
    return result;
}

template <class T>
Parameters<T> backward(const Parameters<T>& p, const imaging::PixelGrid& image, Label label) {
    const imaging::PixelGrid* ptr = &image;
    const Matrix<T> x = pack_images<T>(std::span<const imaging::PixelGrid* const>(&ptr, 1), p.spec.input);
    Parameters<T> grads;
    loss_and_gradient(p, x, std::span<const Label>(&label, 1), &grads);
    return grads;
}

template <class T>
imaging::PixelGrid input_gradient(const Parameters<T>& p, const imaging::PixelGrid& image, Label target) {
    const imaging::PixelGrid* ptr = &image;
    const Matrix<T> x = pack_images<T>(std::span<const imaging::PixelGrid* const>(&ptr, 1), p.spec.input);
    Matrix<T> gx;
    loss_and_gradient<T>(p, x, std::span<const Label>(&target, 1), nullptr, &gx);
    imaging::PixelGrid out(image.resolution, image.kind, image.length);
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] = static_cast<double>(gx.data()[k]);
    }
    return out;
}

#define QBILL_INSTANTIATE(T)                                                                       \
    template struct Parameters<T>;                                                                 \
    template Matrix<T> pack_images<T>(std::span<const imaging::PixelGrid* const>, int);            \
    template Matrix<T> logits<T>(const Parameters<T>&, const Matrix<T>&);                          \
    template Prediction predict<T>(const Parameters<T>&, const imaging::PixelGrid&);              \
    template std::vector<Prediction> predict<T>(const Parameters<T>&,                              \
                                                std::span<const imaging::PixelGrid* const>,        \
                                                std::size_t);                                      \
    template LossOutput loss_and_gradient<T>(const Parameters<T>&, const Matrix<T>&,               \
                                             std::span<const Label>, Parameters<T>*, Matrix<T>*);  \
    template Parameters<T> backward<T>(const Parameters<T>&, const imaging::PixelGrid&, Label);    \
    template imaging::PixelGrid input_gradient<T>(const Parameters<T>&, const imaging::PixelGrid&, \
                                                  Label);

QBILL_INSTANTIATE(float)
QBILL_INSTANTIATE(double)

#undef QBILL_INSTANTIATE

}  // namespace qbill::convnet
