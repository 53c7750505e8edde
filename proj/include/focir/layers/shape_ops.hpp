#ifndef FOCIR_LAYERS_SHAPE_OPS_HPP
#define FOCIR_LAYERS_SHAPE_OPS_HPP

#include <span>
#include <vector>

#include "focir/tensor.hpp"

namespace focir {

// Column-wise juxtaposition of zones x M_i matrices, in argument order.
inline Tensor concatenate(std::span<const Tensor* const> parts) {
    if (parts.empty()) throw data_error("concatenate: no parts");
    const std::size_t n = parts.front()->extent(0);
    std::size_t total = 0;
    for (const Tensor* part : parts) {
        if (part->rank() != 2 || part->extent(0) != n)
            throw data_error("concatenate: parts must share the zone extent");
        total += part->extent(1);
    }
    Tensor out({n, total});
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t col = 0;
        for (const Tensor* part : parts)
            for (std::size_t j = 0; j < part->extent(1); ++j)
                out(p, col++) = (*part)(p, j);
    }
    return out;
}

inline Tensor concatenate(std::initializer_list<const Tensor*> parts) {
    std::vector<const Tensor*> v(parts);
    return concatenate(std::span<const Tensor* const>(v));
}

// Columns [begin, end) of a zones x F matrix.
inline Tensor slice_columns(const Tensor& x, std::size_t begin, std::size_t end) {
    if (x.rank() != 2 || begin > end || end > x.extent(1))
        throw data_error("slice_columns: bad range");
    Tensor out({x.extent(0), end - begin});
    for (std::size_t p = 0; p < x.extent(0); ++p)
        for (std::size_t j = begin; j < end; ++j)
            out(p, j - begin) = x(p, j);
    return out;
}

// Converts a variable-major lag block (lag t-1 first within each variable)
// into a zones x variables x steps tensor whose step axis runs oldest-first:
// out[p, v, s] = x[p, v*b + (b-1-s)].
inline Tensor reshape_to_steps(const Tensor& x, std::size_t n_vars, std::size_t lookback) {
    if (x.rank() != 2 || x.extent(1) != n_vars * lookback)
        throw data_error("reshape_to_steps: expected " + std::to_string(n_vars * lookback) +
                         " columns, got " + x.shape_string());
    const std::size_t n = x.extent(0);
    Tensor out({n, n_vars, lookback});
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t v = 0; v < n_vars; ++v)
            for (std::size_t s = 0; s < lookback; ++s)
                out(p, v, s) = x(p, v * lookback + (lookback - 1 - s));
    return out;
}

// Inverse of reshape_to_steps.
inline Tensor flatten_from_steps(const Tensor& x) {
    if (x.rank() != 3) throw data_error("flatten_from_steps: expected rank-3 tensor");
    const std::size_t n = x.extent(0);
    const std::size_t n_vars = x.extent(1);
    const std::size_t lookback = x.extent(2);
    Tensor out({n, n_vars * lookback});
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t v = 0; v < n_vars; ++v)
            for (std::size_t s = 0; s < lookback; ++s)
                out(p, v * lookback + (lookback - 1 - s)) = x(p, v, s);
    return out;
}

}  // namespace focir

#endif
