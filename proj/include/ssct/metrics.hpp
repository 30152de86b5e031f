#pragma once

#include "ssct/geometry.hpp"

namespace ssct {

// PSNR in dB over the inscribed circle; identical images give +infinity.
double psnr(const Image& reference, const Image& test, double peak = 1.0);

// Mean local SSIM with an 11x11 Gaussian window (sigma 1.5), K1=0.01,
// K2=0.03, dynamic range 1.0, averaged over window centers inside the
// inscribed circle (full windows only). Requires size >= 16.
double ssim(const Image& reference, const Image& test);

} // namespace ssct
