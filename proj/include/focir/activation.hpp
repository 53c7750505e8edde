#ifndef FOCIR_ACTIVATION_HPP
#define FOCIR_ACTIVATION_HPP

#include <cmath>
#include <string>

#include "focir/errors.hpp"
#include "focir/tensor.hpp"

namespace focir {

enum class Activation { linear, sigmoid, relu, tanh };

inline Activation activation_from_string(const std::string& name) {
    if (name == "linear") return Activation::linear;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    throw config_error("unknown activation '" + name + "'");
}

inline std::string to_string(Activation kind) {
    switch (kind) {
        case Activation::linear: return "linear";
        case Activation::sigmoid: return "sigmoid";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
    }
    throw config_error("unknown activation kind");
}

inline double activate(Activation kind, double x) {
    switch (kind) {
        case Activation::linear: return x;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::relu: return x > 0.0 ? x : 0.0;
        case Activation::tanh: return std::tanh(x);
    }
    throw config_error("unknown activation kind");
}

// derivative at pre-activation x
inline double activate_grad(Activation kind, double x) {
    switch (kind) {
        case Activation::linear: return 1.0;
        case Activation::sigmoid: {
            double s = 1.0 / (1.0 + std::exp(-x));
            return s * (1.0 - s);
        }
        case Activation::relu: return x > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: {
            double t = std::tanh(x);
            return 1.0 - t * t;
        }
    }
    throw config_error("unknown activation kind");
}

inline Tensor activation_apply(Activation kind, const Tensor& x) {
    Tensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = activate(kind, x[i]);
    return out;
}

inline Tensor activation_grad(Activation kind, const Tensor& x) {
    Tensor out(x.shape());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = activate_grad(kind, x[i]);
    return out;
}

}  // namespace focir

#endif
