#include "ssct/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssct/projector.hpp"
#include "ssct/rng.hpp"

namespace ssct {

Image rasterize_ellipses(const std::vector<Ellipse>& ellipses, int size) {
    Image img(size);
    const float c = (size - 1) * 0.5f;
    for (const Ellipse& e : ellipses) {
        const float cr = std::cos(e.rot), sr = std::sin(e.rot);
        const float inv_a2 = 1.0f / (e.a * e.a), inv_b2 = 1.0f / (e.b * e.b);
        for (int y = 0; y < size; ++y) {
            const float dy = static_cast<float>(y) - c - e.cy;
            for (int x = 0; x < size; ++x) {
                const float dx = static_cast<float>(x) - c - e.cx;
                const float p = cr * dx + sr * dy;
                const float q = -sr * dx + cr * dy;
                if (p * p * inv_a2 + q * q * inv_b2 <= 1.0f) img.at(y, x) += e.intensity;
            }
        }
    }
    for (float& v : img.data) v = std::clamp(v, 0.0f, 1.0f);
    return img;
}

std::vector<Ellipse> phantom_ellipses(std::uint64_t seed, int size) {
    if (size < 32) throw std::invalid_argument("phantom size must be >= 32");
    Rng rng(mix_seed(seed, 0xe111b5e5ull));
    const int count = rng.uniform_int(5, 12);
    const float h = static_cast<float>(size);
    // keep every ellipse strictly inside the inscribed circle
    const float max_reach = 0.47f * h;
    std::vector<Ellipse> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Ellipse e;
        e.a = rng.uniform(0.05f, 0.4f) * h;
        e.b = rng.uniform(0.05f, 0.4f) * h;
        e.rot = rng.uniform(0.0f, static_cast<float>(2.0 * M_PI));
        e.intensity = rng.uniform(-0.4f, 0.4f);
        const float reach = std::max(e.a, e.b);
        for (;;) {
            const float cx = rng.uniform(-0.5f, 0.5f) * h;
            const float cy = rng.uniform(-0.5f, 0.5f) * h;
            if (std::sqrt(cx * cx + cy * cy) + reach <= max_reach) {
                e.cx = cx;
                e.cy = cy;
                break;
            }
        }
        out.push_back(e);
    }
    return out;
}

Image gen_phantom(std::uint64_t seed, int size) {
    return rasterize_ellipses(phantom_ellipses(seed, size), size);
}

Sinogram simulate(const Image& image, int n_views, float sigma_rel, std::uint64_t seed) {
    if (sigma_rel < 0.0f) throw std::invalid_argument("simulate: sigma_rel must be >= 0");
    const Geometry geom = make_geometry(image.size, n_views);
    Sinogram sino = radon(image, geom);
    if (sigma_rel > 0.0f) {
        float mx = 0.0f;
        for (float v : sino.data) mx = std::max(mx, v);
        const float sigma = sigma_rel * mx;
        Rng rng(mix_seed(seed, 0x4015eull));
        for (float& v : sino.data) v += sigma * rng.normal();
    }
    return sino;
}

std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>
split(const std::vector<std::uint64_t>& seeds, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split: train_fraction must be in (0,1)");
    const std::size_t n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(seeds.size()) * train_fraction + 1e-9));
    std::vector<std::uint64_t> train(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::uint64_t> test(seeds.begin() + static_cast<std::ptrdiff_t>(n_train), seeds.end());
    return {std::move(train), std::move(test)};
}

} // namespace ssct
