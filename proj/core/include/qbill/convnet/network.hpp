#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qbill/convnet/architecture.hpp"
#include "qbill/imaging/dataset.hpp"
#include "qbill/imaging/pixel_grid.hpp"

namespace qbill::convnet {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using imaging::Label;

/// One layer of the stack. Conv weights are filters x (k*k*C) with column
/// (ky*k + kx)*C + c; dense weights are out x in. The flattened input of the
/// first dense layer is indexed (y*W + x)*C + c.
template <class T>
struct Layer {
    LayerShape shape;
    Matrix<T> weights;
    Vector<T> bias;
};

template <class T>
struct Parameters {
    ArchitectureSpec spec;
    std::vector<Layer<T>> layers;

    static Parameters zeros(const ArchitectureSpec& spec);
    /// He initialization: weights ~ N(0, 2/fan_in) drawn in double from
    /// mt19937_64(seed), biases zero. Float and double copies agree.
    static Parameters he_init(const ArchitectureSpec& spec, std::uint64_t seed);

    template <class U>
    Parameters<U> cast() const {
        Parameters<U> out;
        out.spec = spec;
        for (const auto& l : layers) {
            out.layers.push_back({l.shape, l.weights.template cast<U>(), l.bias.template cast<U>()});
        }
        return out;
    }

    std::size_t count() const;
};

struct Prediction {
    double b1 = 0.5;  // probability integrable
    double b2 = 0.5;  // probability non-integrable
    /// b1 > b2 means integrable; an exact tie counts as non-integrable.
    Label label() const { return b1 > b2 ? Label::integrable : Label::non_integrable; }
};

/// Packs images into the 1 x (B*R*R) network input, image b occupying
/// columns [b*R*R, (b+1)*R*R) in row-major pixel order.
template <class T>
Matrix<T> pack_images(std::span<const imaging::PixelGrid* const> images, int resolution);

/// Output-layer pre-activations, 2 x B.
template <class T>
Matrix<T> logits(const Parameters<T>& p, const Matrix<T>& batch);

Prediction prediction_from_logits(double z1, double z2);

template <class T>
Prediction predict(const Parameters<T>& p, const imaging::PixelGrid& image);

/// Batched inference over many images.
template <class T>
std::vector<Prediction> predict(const Parameters<T>& p,
                                std::span<const imaging::PixelGrid* const> images,
                                std::size_t batch = 64);

struct LossOutput {
    double loss = 0.0;  // mean cross-entropy over the batch
    std::size_t correct = 0;
};

/// Mean cross-entropy of the batch and, when requested, its exact gradient
/// with respect to every parameter (`grads`, same shapes as `p`) and to the
/// input pixels (`input_grad`, 1 x (B*R*R)).
template <class T>
LossOutput loss_and_gradient(const Parameters<T>& p, const Matrix<T>& batch,
                             std::span<const Label> labels, Parameters<T>* grads,
                             Matrix<T>* input_grad = nullptr);

/// Single-example gradient of the cross-entropy.
template <class T>
Parameters<T> backward(const Parameters<T>& p, const imaging::PixelGrid& image, Label label);

/// d loss(image, target) / d pixel, as a grid of the image's resolution.
template <class T>
imaging::PixelGrid input_gradient(const Parameters<T>& p, const imaging::PixelGrid& image,
                                  Label target);

}  // namespace qbill::convnet
