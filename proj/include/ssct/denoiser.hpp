#pragma once

#include <cstdint>

#include "ssct/autodiff.hpp"
#include "ssct/geometry.hpp"

namespace ssct {

// Residual CNN image denoiser: conv + leaky ReLU stacked layers-1 times, then
// a linear conv back to one channel, added to the input. The final layer is
// zero-initialized so a fresh denoiser is exactly the identity.
struct DenoiserParams {
    int layers = 5;
    int channels = 32;
    int kernel = 3;
    float slope = 0.1f;
    std::vector<Tensor> weights; // layer l: {out, in, kernel, kernel}
    std::vector<Tensor> biases;  // layer l: {out}

    std::size_t param_count() const;
};

DenoiserParams init_denoiser(std::uint64_t seed, int channels = 32, int layers = 5);

// Plain forward pass (no tape); out = image + residual(image).
Image denoise(const DenoiserParams& params, const Image& image);

// Tape-building forward pass. Weight/bias leaves are created by the caller
// (so the same leaves can be reused across an averaged batch) and must match
// the architecture descriptor.
struct DenoiserLeaves {
    std::vector<Value> weights;
    std::vector<Value> biases;
};
DenoiserLeaves denoiser_leaves(Graph& g, const DenoiserParams& params, bool requires_grad);
Value denoiser_op(Graph& g, const DenoiserLeaves& leaves, Value image2d,
                  const DenoiserParams& arch);

} // namespace ssct
