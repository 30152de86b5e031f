#pragma once

#include <complex>
#include <vector>

namespace ssct {

int next_pow2(int n);

// Radix-2 twiddle tables for a fixed power-of-two length, precomputed in
// double and stored in float. One plan serves both directions.
struct FftPlan {
    int n = 0;
    std::vector<std::complex<float>> fwd; // concatenated per-stage twiddles
    std::vector<std::complex<float>> inv;
};

FftPlan make_fft_plan(int n);

// In-place transform; inverse includes the 1/n scaling.
void fft_run(const FftPlan& plan, std::complex<float>* a, bool inverse);

} // namespace ssct
