#pragma once

#include "ssct/autodiff.hpp"
#include "ssct/geometry.hpp"

namespace ssct {

// Per-frequency real multiplicative coefficients over the non-negative half
// spectrum of a length-P DFT along the detector axis, P = next power of two
// >= 2*n_bins. Applied with the conjugate-symmetric extension, so filtering
// real sinograms stays real.
struct FrequencyFilter {
    int n_bins = 0;
    int padded = 0; // P
    bool trainable = true;
    Tensor coeffs; // shape {padded/2 + 1}
};

// Filter length bookkeeping
int filter_pad_length(int n_bins);        // next power of two >= 2*n_bins
int filter_coeff_count(int n_bins);       // pad/2 + 1

// Band-limited discrete ramp (Ram-Lak) tap: h[0]=1/4, h[n]=0 for even n,
// h[n]=-1/(pi n)^2 for odd n.
double ramp_tap(int n);

// Ram-Lak initialization of the frequency-domain filter.
FrequencyFilter ramp_init(int n_bins);

// Per view: zero-pad to P, DFT, multiply by the symmetric extension of the
// coefficients, inverse DFT, truncate to n_bins.
Sinogram filter_sinogram(const Sinogram& sino, const FrequencyFilter& filter);

// Filtered back-projection with the angular quadrature weight pi/n_views
// (angles span [0,2*pi), so the parallel-beam double coverage is folded into
// the constant); output is masked to the inscribed circle.
Image fbp(const Sinogram& sino, const FrequencyFilter& filter);
float fbp_scale(int n_views);

// Differentiable variants; phi value is shaped {pad/2 + 1}.
Value filter_sinogram_op(Graph& g, Value sino, Value phi, const Geometry& geom);
Value fbp_op(Graph& g, Value sino, Value phi, const Geometry& geom);

// Raw kernel shared with the benchmark: filters n_views rows of length
// n_bins with the half-spectrum coefficients phi (n_half = P/2+1).
void filter_rows(const float* sino, int n_views, int n_bins, const float* phi, int n_half, int pad,
                 float* out);

} // namespace ssct
