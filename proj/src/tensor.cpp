#include "ssct/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace ssct {

std::size_t shape_numel(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int d : shape) {
        if (d <= 0) throw std::invalid_argument("tensor shape dims must be positive, got " + shape_to_string(shape));
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

std::string shape_to_string(const std::vector<int>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)), data_(shape_numel(shape_), 0.0f) {}

Tensor::Tensor(std::vector<int> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_numel(shape_) != data_.size())
        throw std::invalid_argument("tensor data length " + std::to_string(data_.size()) +
                                    " does not match shape " + shape_to_string(shape_));
}

Tensor Tensor::scalar(float v) { return Tensor({1}, {v}); }

Tensor Tensor::zeros_like(const Tensor& t) { return Tensor(t.shape()); }

bool Tensor::all_finite() const {
    for (float v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string Tensor::shape_str() const { return shape_to_string(shape_); }

} // namespace ssct
