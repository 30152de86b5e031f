#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ssct {

// Dense row-major float tensor. The pipeline runs in 32-bit floats
// throughout; shape is validated so product(shape) == data length always
// holds. Gradients for leaves with requires_grad are materialized by
// Graph::backward.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape);
    Tensor(std::vector<int> shape, std::vector<float> data);

    static Tensor scalar(float v);
    static Tensor zeros_like(const Tensor& t);

    const std::vector<int>& shape() const { return shape_; }
    int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
    int ndim() const { return static_cast<int>(shape_.size()); }
    std::size_t size() const { return data_.size(); }
    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    float* data() { return data_.data(); }
    const float* data() const { return data_.data(); }
    std::vector<float>& values() { return data_; }
    const std::vector<float>& values() const { return data_; }
    float operator[](std::size_t i) const { return data_[i]; }
    float& operator[](std::size_t i) { return data_[i]; }

    bool all_finite() const;
    std::string shape_str() const;

    bool requires_grad = false;

private:
    std::vector<int> shape_;
    std::vector<float> data_;
};

std::size_t shape_numel(const std::vector<int>& shape);
std::string shape_to_string(const std::vector<int>& shape);

} // namespace ssct
