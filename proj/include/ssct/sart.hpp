#pragma once

#include "ssct/geometry.hpp"

namespace ssct {

// SART hyperparameters; tv_weight == 0 makes sart_tv fall back to plain sart
// exactly. Defaults come from a pilot grid over relaxation {0.4, 0.8, 1.2}
// and sweeps {10, 20, 40} on held-out phantoms at 32 views.
struct SartConfig {
    int iterations = 20;    // full sweeps over all views
    float relaxation = 0.8f; // lambda in (0,2)
    float tv_weight = 0.0f;
    int tv_inner_steps = 10;
};

// Simultaneous algebraic reconstruction: per view, one relaxed weighted
// correction x += lambda * A_v^T[(y_v - A_v x)/rowsum] / colsum with zero-sum
// rows and columns skipped; nonnegativity clamp and circle mask per sweep.
Image sart(const Sinogram& sino, const SartConfig& config);

// Interleaves one SART sweep with tv_inner_steps gradient-descent steps on
// the smoothed isotropic total variation at step size tv_weight.
Image sart_tv(const Sinogram& sino, const SartConfig& config);

// Smoothed isotropic TV functional sum(sqrt(gx^2 + gy^2 + eps)), eps=1e-6,
// forward differences. Exposed for the regularization tests.
double tv_value(const Image& img);
void tv_gradient(const Image& img, std::vector<float>& grad);

} // namespace ssct
