#pragma once

#include <cstdint>
#include <vector>

namespace ssct {

// Parallel-beam acquisition geometry. Angles are 2*pi*i/n_views, strictly
// increasing in [0, 2*pi); detector spacing is one pixel unit and n_bins must
// cover the inscribed-circle diagonal (>= ceil(sqrt(2) * image_size)).
struct Geometry {
    int n_views = 0;
    int n_bins = 0;
    int image_size = 0;
    std::vector<double> angles;

    bool operator==(const Geometry& o) const {
        return n_views == o.n_views && n_bins == o.n_bins && image_size == o.image_size;
    }
};

// n_bins == 0 selects the default: ceil(sqrt(2)*image_size) rounded up to even
Geometry make_geometry(int image_size, int n_views, int n_bins = 0);
int default_bin_count(int image_size);

// H x W grayscale attenuation map, values nominally in [0,1], supported on
// the inscribed circle.
struct Image {
    int size = 0;
    std::vector<float> data;

    Image() = default;
    explicit Image(int n) : size(n), data(static_cast<std::size_t>(n) * n, 0.0f) {}
    float at(int y, int x) const { return data[static_cast<std::size_t>(y) * size + x]; }
    float& at(int y, int x) { return data[static_cast<std::size_t>(y) * size + x]; }
};

// n_views x n_bins projection measurements, view-major.
struct Sinogram {
    Geometry geom;
    std::vector<float> data;

    Sinogram() = default;
    explicit Sinogram(Geometry g)
        : geom(std::move(g)),
          data(static_cast<std::size_t>(geom.n_views) * geom.n_bins, 0.0f) {}
    float at(int v, int b) const { return data[static_cast<std::size_t>(v) * geom.n_bins + b]; }
    float& at(int v, int b) { return data[static_cast<std::size_t>(v) * geom.n_bins + b]; }
};

// Pixel membership in the inscribed reconstruction circle; everything CT-side
// (phantoms, reconstruction masking, metrics) uses this one definition.
bool inside_circle(int size, int y, int x);
// 1.0f inside the circle, 0.0f outside
std::vector<float> circle_mask(int size);
// zero all pixels outside the circle, in place
void apply_circle_mask(Image& img);

} // namespace ssct
