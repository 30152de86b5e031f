#include "ssct/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ssct {

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

FftPlan make_fft_plan(int n) {
    if (n < 1 || (n & (n - 1)) != 0) throw std::invalid_argument("fft length must be a power of two");
    FftPlan plan;
    plan.n = n;
    plan.fwd.reserve(static_cast<std::size_t>(n));
    plan.inv.reserve(static_cast<std::size_t>(n));
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / len;
        for (int k = 0; k < len / 2; ++k) {
            plan.fwd.emplace_back(static_cast<float>(std::cos(ang * k)),
                                  static_cast<float>(-std::sin(ang * k)));
            plan.inv.emplace_back(static_cast<float>(std::cos(ang * k)),
                                  static_cast<float>(std::sin(ang * k)));
        }
    }
    return plan;
}

void fft_run(const FftPlan& plan, std::complex<float>* a, bool inverse) {
    const int n = plan.n;
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::complex<float>* tw = inverse ? plan.inv.data() : plan.fwd.data();
    std::size_t toff = 0;
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        for (int i = 0; i < n; i += len)
            for (int k = 0; k < half; ++k) {
                const std::complex<float> u = a[i + k];
                const std::complex<float> v = a[i + k + half] * tw[toff + static_cast<std::size_t>(k)];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        toff += static_cast<std::size_t>(half);
    }
    if (inverse) {
        const float s = 1.0f / static_cast<float>(n);
        for (int i = 0; i < n; ++i) a[i] *= s;
    }
}

} // namespace ssct
