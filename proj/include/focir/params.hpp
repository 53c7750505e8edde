#ifndef FOCIR_PARAMS_HPP
#define FOCIR_PARAMS_HPP

#include <string>

#include "focir/tensor.hpp"

namespace focir {

// Constraint class of a parameter group. The optimizer and the loss need to
// tell the feature-importance gate (L1 term, no L2) and the IndRNN recurrent
// vectors (clipped to a bound after every step) apart from everything else.
enum class ParamKind { standard, feature_importance, indrnn_recurrent };

struct ParamRef {
    std::string name;
    Tensor* value = nullptr;
    Tensor* grad = nullptr;
    ParamKind kind = ParamKind::standard;
    double recurrent_bound = 0.0;  // only meaningful for indrnn_recurrent
};

}  // namespace focir

#endif
