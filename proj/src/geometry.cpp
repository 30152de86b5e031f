#include "ssct/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssct {

int default_bin_count(int image_size) {
    int nb = static_cast<int>(std::ceil(std::sqrt(2.0) * image_size));
    if (nb % 2 != 0) ++nb;
    return nb;
}

Geometry make_geometry(int image_size, int n_views, int n_bins) {
    if (image_size < 1) throw std::invalid_argument("geometry: image_size must be positive");
    if (n_views < 1) throw std::invalid_argument("geometry: n_views must be positive");
    if (n_bins == 0) n_bins = default_bin_count(image_size);
    const int min_bins = static_cast<int>(std::ceil(std::sqrt(2.0) * image_size));
    if (n_bins < min_bins)
        throw std::invalid_argument("geometry: n_bins " + std::to_string(n_bins) +
                                    " does not cover the inscribed circle (need >= " +
                                    std::to_string(min_bins) + ")");
    Geometry g;
    g.image_size = image_size;
    g.n_views = n_views;
    g.n_bins = n_bins;
    g.angles.resize(static_cast<std::size_t>(n_views));
    for (int i = 0; i < n_views; ++i)
        g.angles[static_cast<std::size_t>(i)] = 2.0 * M_PI * i / n_views;
    return g;
}

bool inside_circle(int size, int y, int x) {
    const double c = (size - 1) * 0.5;
    const double r = size * 0.5;
    const double dy = y - c, dx = x - c;
    return dy * dy + dx * dx <= r * r;
}

std::vector<float> circle_mask(int size) {
    std::vector<float> m(static_cast<std::size_t>(size) * size, 0.0f);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            if (inside_circle(size, y, x)) m[static_cast<std::size_t>(y) * size + x] = 1.0f;
    return m;
}

void apply_circle_mask(Image& img) {
    for (int y = 0; y < img.size; ++y)
        for (int x = 0; x < img.size; ++x)
            if (!inside_circle(img.size, y, x)) img.at(y, x) = 0.0f;
}

} // namespace ssct
