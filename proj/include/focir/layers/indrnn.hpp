#ifndef FOCIR_LAYERS_INDRNN_HPP
#define FOCIR_LAYERS_INDRNN_HPP

#include <span>
#include <vector>

#include "focir/activation.hpp"
#include "focir/tensor.hpp"

namespace focir {

// Recurrent cell whose hidden-to-hidden connection is an elementwise product
// with a per-neuron weight vector: h_t = act(U x_t + w . h_{t-1} + b).
// |w| stays within recurrent_bound; the optimizer clips after every step.
struct IndRnnLayer {
    Tensor input_weights;  // H x F_in  (U)
    Tensor input_weight_grad;
    Tensor recurrent_weights;  // H  (w)
    Tensor recurrent_weight_grad;
    Tensor bias;  // H
    Tensor bias_grad;
    Activation activation = Activation::relu;
    double recurrent_bound = 1.0;

    IndRnnLayer() = default;
    IndRnnLayer(std::size_t hidden, std::size_t in_features, Activation act, double bound)
        : input_weights({hidden, in_features}),
          input_weight_grad({hidden, in_features}),
          recurrent_weights({hidden}),
          recurrent_weight_grad({hidden}),
          bias({hidden}),
          bias_grad({hidden}),
          activation(act),
          recurrent_bound(bound) {}

    std::size_t hidden_size() const { return recurrent_weights.extent(0); }
    std::size_t in_features() const { return input_weights.extent(1); }

    void preactivation(std::span<const double> x_t, std::span<const double> h_prev,
                       std::span<double> z_out) const {
        const std::size_t h_dim = hidden_size();
        const std::size_t f_in = in_features();
        for (std::size_t i = 0; i < h_dim; ++i) {
            double acc = bias(i) + recurrent_weights(i) * h_prev[i];
            for (std::size_t f = 0; f < f_in; ++f)
                acc += input_weights(i, f) * x_t[f];
            z_out[i] = acc;
        }
    }
};

// Single recurrence step, h_t = act(U x_t + w . h_prev + b).
inline std::vector<double> indrnn_step(std::span<const double> x_t,
                                       std::span<const double> h_prev,
                                       const IndRnnLayer& layer) {
    if (x_t.size() != layer.in_features() || h_prev.size() != layer.hidden_size())
        throw data_error("indrnn_step: input/state size mismatch");
    std::vector<double> z(layer.hidden_size());
    layer.preactivation(x_t, h_prev, z);
    for (double& v : z) v = activate(layer.activation, v);
    return z;
}

struct IndRnnStackCache {
    Tensor input;                // N x B x b, step axis oldest-first
    std::vector<Tensor> preact;  // per layer: N x b x H_l
    std::vector<Tensor> state;   // per layer: N x b x H_l (post-activation)
};

// Runs the stacked IndRNN over the b steps of every zone independently with
// the same shared parameters (h_0 = 0), and returns the top layer's
// last-step state per zone: N x H_top. Layer l consumes the full per-step
// state sequence of layer l-1.
inline Tensor zone_distributed_indrnn_forward(const Tensor& x,
                                              const std::vector<IndRnnLayer>& stack,
                                              IndRnnStackCache& cache) {
    if (stack.empty()) throw data_error("indrnn: empty layer stack");
    if (x.rank() != 3) throw data_error("indrnn: expected zones x channels x steps input");
    const std::size_t n = x.extent(0);
    const std::size_t channels = x.extent(1);
    const std::size_t steps = x.extent(2);
    if (steps == 0) throw data_error("indrnn: zero-length step axis");
    if (channels != stack.front().in_features())
        throw data_error("indrnn: channel count does not match first layer input size");

    cache.input = x;
    cache.preact.assign(stack.size(), Tensor());
    cache.state.assign(stack.size(), Tensor());
    for (std::size_t l = 0; l < stack.size(); ++l) {
        cache.preact[l] = Tensor({n, steps, stack[l].hidden_size()});
        cache.state[l] = Tensor({n, steps, stack[l].hidden_size()});
    }

    std::vector<double> x_t;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t l = 0; l < stack.size(); ++l) {
            const IndRnnLayer& layer = stack[l];
            const std::size_t h_dim = layer.hidden_size();
            const std::size_t f_in = layer.in_features();
            std::vector<double> h_prev(h_dim, 0.0);
            x_t.resize(f_in);
            for (std::size_t s = 0; s < steps; ++s) {
                if (l == 0) {
                    for (std::size_t c = 0; c < f_in; ++c) x_t[c] = x(p, c, s);
                } else {
                    for (std::size_t c = 0; c < f_in; ++c) x_t[c] = cache.state[l - 1](p, s, c);
                }
                layer.preactivation(x_t, h_prev,
                                    {&cache.preact[l](p, s, 0), h_dim});
                for (std::size_t i = 0; i < h_dim; ++i) {
                    double h = activate(layer.activation, cache.preact[l](p, s, i));
                    cache.state[l](p, s, i) = h;
                    h_prev[i] = h;
                }
            }
        }
    }

    const std::size_t top = stack.size() - 1;
    const std::size_t h_top = stack[top].hidden_size();
    Tensor out({n, h_top});
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t i = 0; i < h_top; ++i)
            out(p, i) = cache.state[top](p, steps - 1, i);
    return out;
}

// Backprop through time over the b steps, summed over zones (shared
// parameters). Upstream gradient lands on the top layer's last step only.
// Returns the gradient w.r.t. the input tensor (N x B x b).
inline Tensor zone_distributed_indrnn_backward(const Tensor& grad_out,
                                               std::vector<IndRnnLayer>& stack,
                                               const IndRnnStackCache& cache) {
    if (cache.input.empty())
        throw data_error("indrnn: backward called without cached forward");
    const std::size_t n = cache.input.extent(0);
    const std::size_t steps = cache.input.extent(2);
    const std::size_t top = stack.size() - 1;
    require_shape(grad_out, n, stack[top].hidden_size(), "indrnn backward");

    Tensor grad_x(cache.input.shape());

    // per-zone buffers: gradient arriving at each step's state from the layer above
    std::vector<std::vector<double>> incoming(stack.size());
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t l = 0; l < stack.size(); ++l)
            incoming[l].assign(steps * stack[l].hidden_size(), 0.0);
        for (std::size_t i = 0; i < stack[top].hidden_size(); ++i)
            incoming[top][(steps - 1) * stack[top].hidden_size() + i] = grad_out(p, i);

        for (std::size_t l = stack.size(); l-- > 0;) {
            IndRnnLayer& layer = stack[l];
            const std::size_t h_dim = layer.hidden_size();
            const std::size_t f_in = layer.in_features();
            std::vector<double> carry(h_dim, 0.0);  // d loss / d h_s via the step s+1 recurrence
            for (std::size_t s = steps; s-- > 0;) {
                for (std::size_t i = 0; i < h_dim; ++i) {
                    double gh = incoming[l][s * h_dim + i] + carry[i];
                    double gz = gh * activate_grad(layer.activation, cache.preact[l](p, s, i));
                    double h_before = s > 0 ? cache.state[l](p, s - 1, i) : 0.0;
                    layer.bias_grad(i) += gz;
                    layer.recurrent_weight_grad(i) += gz * h_before;
                    carry[i] = gz * layer.recurrent_weights(i);
                    if (gz == 0.0) continue;
                    for (std::size_t f = 0; f < f_in; ++f) {
                        double in_v = l == 0 ? cache.input(p, f, s) : cache.state[l - 1](p, s, f);
                        layer.input_weight_grad(i, f) += gz * in_v;
                        double gi = gz * layer.input_weights(i, f);
                        if (l == 0)
                            grad_x(p, f, s) += gi;
                        else
                            incoming[l - 1][s * f_in + f] += gi;
                    }
                }
            }
        }
    }
    return grad_x;
}

}  // namespace focir

#endif
