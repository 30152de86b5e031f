#pragma once

#include <cstdint>
#include <utility>

#include "ssct/geometry.hpp"

namespace ssct {

// One additive ellipse, everything in pixel units relative to the image
// center; intensity may be negative.
struct Ellipse {
    float cx = 0, cy = 0;
    float a = 1, b = 1;
    float rot = 0;
    float intensity = 0;
};

// A pixel belongs to an ellipse iff its center satisfies the ellipse
// inequality; intensities add and the result is clamped to [0,1].
Image rasterize_ellipses(const std::vector<Ellipse>& ellipses, int size);

// Seeded random ellipses phantom: 5-12 ellipses, semi-axes 5%-40% of the
// image size, intensities in [-0.4, 0.4], support strictly inside the
// inscribed circle. Requires size >= 32.
std::vector<Ellipse> phantom_ellipses(std::uint64_t seed, int size);
Image gen_phantom(std::uint64_t seed, int size);

// radon of the image plus seeded AWGN with standard deviation
// sigma_rel * max(clean sinogram); noise is element-wise independent.
Sinogram simulate(const Image& image, int n_views, float sigma_rel, std::uint64_t seed);

// Deterministic, disjoint, exhaustive split of phantom seeds.
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>
split(const std::vector<std::uint64_t>& seeds, double train_fraction);

} // namespace ssct
