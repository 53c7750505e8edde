#ifndef FOCIR_GRADCHECK_HPP
#define FOCIR_GRADCHECK_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>

#include "focir/tensor.hpp"

namespace focir {

struct GradCheckEntry {
    std::string name;
    Tensor* value;           // perturbed in place, restored afterwards
    const Tensor* analytic;  // gradient to verify, same shape
};

struct GradCheckResult {
    double max_rel_error = 0.0;
    std::string worst_entry;
    std::size_t worst_index = 0;
};

// Central finite differences with step eps on every coordinate of every
// entry, against the provided analytic gradients. The deviation is measured
// relative to max(1, |analytic|, |numeric|), so near-zero gradients are
// compared absolutely instead of amplifying rounding noise.
inline GradCheckResult finite_difference_check(const std::function<double()>& scalar_fn,
                                               std::span<const GradCheckEntry> entries,
                                               double eps) {
    GradCheckResult result;
    for (const GradCheckEntry& entry : entries) {
        Tensor& value = *entry.value;
        if (!value.same_shape(*entry.analytic))
            throw data_error("gradcheck: analytic gradient shape mismatch for " + entry.name);
        for (std::size_t i = 0; i < value.size(); ++i) {
            const double saved = value[i];
            value[i] = saved + eps;
            const double up = scalar_fn();
            value[i] = saved - eps;
            const double down = scalar_fn();
            value[i] = saved;
            const double numeric = (up - down) / (2.0 * eps);
            const double analytic = (*entry.analytic)[i];
            const double scale = std::max({1.0, std::fabs(numeric), std::fabs(analytic)});
            const double rel = std::fabs(numeric - analytic) / scale;
            if (rel > result.max_rel_error) {
                result.max_rel_error = rel;
                result.worst_entry = entry.name;
                result.worst_index = i;
            }
        }
    }
    return result;
}

}  // namespace focir

#endif
