#ifndef FOCIR_LAYERS_CONV1D_HPP
#define FOCIR_LAYERS_CONV1D_HPP

#include "focir/activation.hpp"
#include "focir/tensor.hpp"

namespace focir {

// 1D convolution over the zone axis with stride 1 and zero same-padding, so
// the zone extent of the output always equals the input's. Implemented as
// cross-correlation (no filter flip), the usual deep-learning convention.
// Each filter has one scalar bias shared across zones. No pooling anywhere.
struct Conv1dLayer {
    Tensor filters;  // K x E x F_in
    Tensor filter_grad;
    Tensor bias;  // K
    Tensor bias_grad;
    Activation activation = Activation::relu;

    Conv1dLayer() = default;
    Conv1dLayer(std::size_t n_filters, std::size_t filter_length, std::size_t in_features,
                Activation act = Activation::relu)
        : filters({n_filters, filter_length, in_features}),
          filter_grad({n_filters, filter_length, in_features}),
          bias({n_filters}),
          bias_grad({n_filters}),
          activation(act) {
        if (filter_length % 2 == 0)
            throw config_error("conv1d: filter length must be odd for same-padding, got " +
                               std::to_string(filter_length));
    }

    std::size_t num_filters() const { return filters.extent(0); }
    std::size_t filter_length() const { return filters.extent(1); }
    std::size_t in_features() const { return filters.extent(2); }

    struct Cache {
        Tensor input;   // N x F_in
        Tensor preact;  // N x K
    };

    // out[p,k] = act( sum_{e,f} x[p+e-pad, f] * W[k,e,f] + b[k] ), x zero outside [0,N)
    Tensor forward(const Tensor& x, Cache& cache) const {
        const std::size_t n = x.extent(0);
        const std::size_t f_in = in_features();
        const std::size_t e_len = filter_length();
        const std::size_t k_out = num_filters();
        if (x.rank() != 2 || x.extent(1) != f_in)
            throw data_error("conv1d: input shape " + x.shape_string() + " incompatible with filters");
        const std::size_t pad = (e_len - 1) / 2;

        Tensor preact({n, k_out});
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t k = 0; k < k_out; ++k) {
                double acc = bias(k);
                for (std::size_t e = 0; e < e_len; ++e) {
                    // source zone index p + e - pad, skipped when it falls in the padding
                    std::size_t q = p + e;
                    if (q < pad || q - pad >= n) continue;
                    q -= pad;
                    for (std::size_t f = 0; f < f_in; ++f)
                        acc += x(q, f) * filters(k, e, f);
                }
                preact(p, k) = acc;
            }
        }
        cache.input = x;
        cache.preact = preact;
        return activation_apply(activation, preact);
    }

    // Standard cross-correlation adjoints; filter/bias grads accumulate over
    // every zone position (shared parameters).
    Tensor backward(const Tensor& grad_out, const Cache& cache) {
        if (cache.input.empty())
            throw data_error("conv1d: backward called without cached forward");
        const Tensor& x = cache.input;
        const std::size_t n = x.extent(0);
        const std::size_t f_in = in_features();
        const std::size_t e_len = filter_length();
        const std::size_t k_out = num_filters();
        require_shape(grad_out, n, k_out, "conv1d backward");
        const std::size_t pad = (e_len - 1) / 2;

        Tensor grad_x({n, f_in});
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t k = 0; k < k_out; ++k) {
                double gz = grad_out(p, k) * activate_grad(activation, cache.preact(p, k));
                if (gz == 0.0) continue;
                bias_grad(k) += gz;
                for (std::size_t e = 0; e < e_len; ++e) {
                    std::size_t q = p + e;
                    if (q < pad || q - pad >= n) continue;
                    q -= pad;
                    for (std::size_t f = 0; f < f_in; ++f) {
                        filter_grad(k, e, f) += gz * x(q, f);
                        grad_x(q, f) += gz * filters(k, e, f);
                    }
                }
            }
        }
        return grad_x;
    }
};

}  // namespace focir

#endif
