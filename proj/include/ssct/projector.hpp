#pragma once

#include "ssct/autodiff.hpp"
#include "ssct/geometry.hpp"

namespace ssct {

// Parallel-beam Radon transform: pixel-driven with linear interpolation
// across the two detector bins straddling each pixel's projection, unit
// detector spacing. backproject() is the exact adjoint (same weights,
// gathered per pixel), so <Ax, y> == <x, A^T y> up to rounding.
Sinogram radon(const Image& image, const Geometry& geom);
Image backproject(const Sinogram& sino);

// Dense matrix of the operator, (n_views*n_bins) x (H*W) row-major; column j
// is radon applied to basis pixel j. Test oracle; guarded to H*W <= 4096.
std::vector<float> dense_operator(const Geometry& geom);

// Differentiable wrappers: image value shaped {H,W}, sinogram {n_views,n_bins}.
Value radon_op(Graph& g, Value image, const Geometry& geom);
Value backproject_op(Graph& g, Value sino, const Geometry& geom);

// Raw kernels (shared with SART and the kernel benchmark). radon_kernel
// parallelizes over views, backproject_kernel over pixel rows; every output
// element is written by exactly one task in a fixed arithmetic order.
void radon_kernel(const float* img, const Geometry& geom, float* sino);
void backproject_kernel(const float* sino, const Geometry& geom, float* img);
// single-view variants: row is one detector row of length n_bins;
// backproject_view accumulates (+=) into img
void radon_view(const float* img, const Geometry& geom, int view, float* row);
void backproject_view(const float* row, const Geometry& geom, int view, float* img);

} // namespace ssct
