#ifndef FOCIR_LAYERS_FEATURE_IMPORTANCE_HPP
#define FOCIR_LAYERS_FEATURE_IMPORTANCE_HPP

#include "focir/activation.hpp"
#include "focir/tensor.hpp"

namespace focir {

// One-to-one gating layer: every input cell is multiplied by the activation
// of its own learned weight. The activated weight doubles as the cell's
// importance score.
struct FeatureImportanceLayer {
    Tensor weights;      // zones x features
    Tensor weight_grad;  // same shape
    Activation activation = Activation::sigmoid;

    FeatureImportanceLayer() = default;
    FeatureImportanceLayer(std::size_t n_zones, std::size_t n_features,
                           Activation act = Activation::sigmoid)
        : weights({n_zones, n_features}),
          weight_grad({n_zones, n_features}),
          activation(act) {}

    struct Cache {
        Tensor input;
    };

    Tensor scores() const { return activation_apply(activation, weights); }

    // weighted = x (hadamard) scores
    Tensor forward(const Tensor& x, Cache& cache) const {
        if (!x.same_shape(weights))
            throw data_error("feature importance: input shape " + x.shape_string() +
                             " does not match weights " + weights.shape_string());
        cache.input = x;
        Tensor out(x.shape());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = x[i] * activate(activation, weights[i]);
        return out;
    }

    // grad_x = g (hadamard) act(W); weight_grad += g (hadamard) x (hadamard) act'(W)
    Tensor backward(const Tensor& grad_out, const Cache& cache) {
        if (cache.input.empty())
            throw data_error("feature importance: backward called without cached forward");
        if (!grad_out.same_shape(weights))
            throw data_error("feature importance: upstream gradient shape mismatch");
        Tensor grad_x(grad_out.shape());
        for (std::size_t i = 0; i < grad_out.size(); ++i) {
            grad_x[i] = grad_out[i] * activate(activation, weights[i]);
            weight_grad[i] += grad_out[i] * cache.input[i] * activate_grad(activation, weights[i]);
        }
        return grad_x;
    }
};

}  // namespace focir

#endif
