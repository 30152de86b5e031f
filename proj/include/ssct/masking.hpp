#pragma once

#include <cstdint>

#include "ssct/autodiff.hpp"
#include "ssct/geometry.hpp"

namespace ssct {

// A subset J of sinogram indices on a seeded strided grid along the detector
// axis: (v,b) is a member iff (b + offset[v]) % stride == phase. The stride
// phases at a fixed seed partition the sinogram exactly.
struct MaskPartition {
    int n_views = 0;
    int n_bins = 0;
    int stride = 0;
    int phase = 0;
    std::uint64_t seed = 0;
    std::vector<int> offsets; // per view, in [0, stride)

    bool member(int v, int b) const {
        return (b + offsets[static_cast<std::size_t>(v)]) % stride == phase;
    }
    std::size_t member_count() const;
};

// Deterministic per seed; per-view random offsets decorrelate the grid across
// views. Requires 2 <= stride <= n_bins/2 and phase < stride.
MaskPartition generate_mask(const Geometry& geom, int stride, int phase, std::uint64_t seed);

// Replace each member pixel by the average of the nearest non-member bins to
// its left and right in the same view (one-sided at the edges). The output on
// J is a function of non-J pixels only.
Sinogram perturb(const Sinogram& sino, const MaskPartition& mask);

// Mean squared difference restricted to J; rejects an empty J.
float masked_mse(const Sinogram& prediction, const Sinogram& target, const MaskPartition& mask);

// Differentiable variant; the gradient is zero at every pixel outside J.
Value masked_mse_op(Graph& g, Value prediction, Tensor target, const MaskPartition& mask);

// Total number of masking-operation invocations in this process. Lets tests
// assert that deployment-time reconstruction never touches the masking path.
std::uint64_t masking_call_count();

} // namespace ssct
