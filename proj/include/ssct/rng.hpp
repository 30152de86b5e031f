#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ssct {

// splitmix64-style mix for deriving independent stream seeds from (base, tag).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull + tag * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Seeded generator with a fully specified output mapping. std::mt19937 has a
// standard-pinned sequence; the uniform/normal transforms below avoid the
// implementation-defined std distributions, so streams are identical across
// toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed)
        : eng_(static_cast<std::uint32_t>(mix_seed(seed, 0x5eedu))) {}

    std::uint32_t next_u32() { return eng_(); }

    // uniform in [0,1), 24-bit resolution
    float uniform() {
        return static_cast<float>(next_u32() >> 8) * (1.0f / 16777216.0f);
    }

    float uniform(float lo, float hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>((static_cast<std::uint64_t>(next_u32()) * span) >> 32);
    }

    // standard normal via Box-Muller, pair cached
    float normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 strictly in (0,1) so log() is finite
        const double u1 = (static_cast<double>(next_u32() >> 8) + 0.5) / 16777216.0;
        const double u2 = static_cast<double>(next_u32() >> 8) / 16777216.0;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = static_cast<float>(r * std::sin(a));
        have_spare_ = true;
        return static_cast<float>(r * std::cos(a));
    }

private:
    std::mt19937 eng_;
    bool have_spare_ = false;
    float spare_ = 0.0f;
};

} // namespace ssct
