#ifndef FOCIR_LAYERS_DENSE_HPP
#define FOCIR_LAYERS_DENSE_HPP

#include "focir/activation.hpp"
#include "focir/tensor.hpp"

namespace focir {

// Fully connected layer applied to each zone's feature row with shared
// weights: out[p,:] = act(W x[p,:] + b).
struct DenseLayer {
    Tensor weights;  // H_out x F_in
    Tensor weight_grad;
    Tensor bias;  // H_out
    Tensor bias_grad;
    Activation activation = Activation::linear;

    DenseLayer() = default;
    DenseLayer(std::size_t out_features, std::size_t in_features, Activation act)
        : weights({out_features, in_features}),
          weight_grad({out_features, in_features}),
          bias({out_features}),
          bias_grad({out_features}),
          activation(act) {}

    std::size_t out_features() const { return weights.extent(0); }
    std::size_t in_features() const { return weights.extent(1); }

    struct Cache {
        Tensor input;   // N x F_in
        Tensor preact;  // N x H_out
    };

    Tensor forward(const Tensor& x, Cache& cache) const {
        const std::size_t n = x.extent(0);
        const std::size_t f_in = in_features();
        const std::size_t h_out = out_features();
        if (x.rank() != 2 || x.extent(1) != f_in)
            throw data_error("dense: input shape " + x.shape_string() + " incompatible with weights " +
                             weights.shape_string());
        Tensor preact({n, h_out});
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t h = 0; h < h_out; ++h) {
                double acc = bias(h);
                for (std::size_t f = 0; f < f_in; ++f)
                    acc += weights(h, f) * x(p, f);
                preact(p, h) = acc;
            }
        }
        cache.input = x;
        cache.preact = preact;
        return activation_apply(activation, preact);
    }

    // grads accumulate over zones
    Tensor backward(const Tensor& grad_out, const Cache& cache) {
        if (cache.input.empty())
            throw data_error("dense: backward called without cached forward");
        const std::size_t n = cache.input.extent(0);
        const std::size_t f_in = in_features();
        const std::size_t h_out = out_features();
        require_shape(grad_out, n, h_out, "dense backward");

        Tensor grad_x({n, f_in});
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t h = 0; h < h_out; ++h) {
                double gz = grad_out(p, h) * activate_grad(activation, cache.preact(p, h));
                bias_grad(h) += gz;
                if (gz == 0.0) continue;
                for (std::size_t f = 0; f < f_in; ++f) {
                    weight_grad(h, f) += gz * cache.input(p, f);
                    grad_x(p, f) += gz * weights(h, f);
                }
            }
        }
        return grad_x;
    }
};

}  // namespace focir

#endif
