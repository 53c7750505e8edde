#ifndef FOCIR_TENSOR_HPP
#define FOCIR_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "focir/errors.hpp"

namespace focir {

// Dense row-major array of doubles with shape metadata. This is the only
// numeric carrier in the library; layers index into it with plain loops.
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0)
        : shape_(std::move(shape)), data_(count(shape_), fill) {}

    Tensor(std::vector<std::size_t> shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (data_.size() != count(shape_))
            throw data_error("tensor: data length " + std::to_string(data_.size()) +
                             " does not match shape volume " + std::to_string(count(shape_)));
    }

    static Tensor matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values) {
        Tensor t({rows, cols});
        if (values.size() != t.size())
            throw data_error("tensor: initializer length does not match matrix shape");
        std::copy(values.begin(), values.end(), t.data_.begin());
        return t;
    }

    static Tensor vector(std::initializer_list<double> values) {
        Tensor t({values.size()});
        std::copy(values.begin(), values.end(), t.data_.begin());
        return t;
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t extent(std::size_t axis) const { return shape_[axis]; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double& operator()(std::size_t i) { return data_[i]; }
    double operator()(std::size_t i) const { return data_[i]; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * shape_[1] + j) * shape_[2] + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * shape_[1] + j) * shape_[2] + k];
    }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // NaN/Inf anywhere is a hard error, never propagated silently.
    void ensure_finite(const char* context) const {
        if (!all_finite())
            throw numeric_error(std::string("non-finite value in ") + context);
    }

    std::string shape_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < shape_.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(shape_[i]);
        }
        return s + ")";
    }

    bool operator==(const Tensor& other) const = default;

private:
    static std::size_t count(const std::vector<std::size_t>& shape) {
        std::size_t n = 1;
        for (std::size_t e : shape) n *= e;
        return shape.empty() ? 0 : n;
    }

    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

inline void require_shape(const Tensor& t, std::size_t rows, std::size_t cols, const char* context) {
    if (t.rank() != 2 || t.extent(0) != rows || t.extent(1) != cols)
        throw data_error(std::string(context) + ": expected (" + std::to_string(rows) + ", " +
                         std::to_string(cols) + "), got " + t.shape_string());
}

}  // namespace focir

#endif
