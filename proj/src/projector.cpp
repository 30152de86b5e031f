#include "ssct/projector.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace ssct {

namespace {

void check_image(const Image& image, const Geometry& geom) {
    if (image.size != geom.image_size)
        throw std::invalid_argument("radon: image size " + std::to_string(image.size) +
                                    " does not match geometry image_size " +
                                    std::to_string(geom.image_size));
}

void check_sino(const Sinogram& sino) {
    const std::size_t expect =
        static_cast<std::size_t>(sino.geom.n_views) * static_cast<std::size_t>(sino.geom.n_bins);
    if (sino.data.size() != expect)
        throw std::invalid_argument("sinogram data length " + std::to_string(sino.data.size()) +
                                    " inconsistent with geometry " + std::to_string(sino.geom.n_views) +
                                    "x" + std::to_string(sino.geom.n_bins));
}

} // namespace

// The forward and adjoint kernels must compute the detector coordinate with
// the identical expression so the interpolation weights match bit for bit.
static inline float det_coord(float dx, float dy, float cs, float sn, float bc) {
    return dx * cs + (dy * sn + bc);
}

void radon_view(const float* img, const Geometry& geom, int view, float* row) {
    const int h = geom.image_size;
    const int nb = geom.n_bins;
    const float c = (h - 1) * 0.5f;
    const float bc = (nb - 1) * 0.5f;
    const float cs = static_cast<float>(std::cos(geom.angles[static_cast<std::size_t>(view)]));
    const float sn = static_cast<float>(std::sin(geom.angles[static_cast<std::size_t>(view)]));
    std::memset(row, 0, sizeof(float) * static_cast<std::size_t>(nb));
    for (int y = 0; y < h; ++y) {
        const float dy = static_cast<float>(y) - c;
        const float* irow = img + static_cast<std::size_t>(y) * h;
        for (int x = 0; x < h; ++x) {
            const float val = irow[x];
            const float u = det_coord(static_cast<float>(x) - c, dy, cs, sn, bc);
            const int b0 = static_cast<int>(std::floor(u));
            const float w = u - static_cast<float>(b0);
            if (b0 >= 0 && b0 < nb) row[b0] += val * (1.0f - w);
            if (b0 + 1 >= 0 && b0 + 1 < nb) row[b0 + 1] += val * w;
        }
    }
}

void radon_kernel(const float* img, const Geometry& geom, float* sino) {
#pragma omp parallel for schedule(static)
    for (int v = 0; v < geom.n_views; ++v)
        radon_view(img, geom, v, sino + static_cast<std::size_t>(v) * geom.n_bins);
}

void backproject_view(const float* row, const Geometry& geom, int view, float* img) {
    const int h = geom.image_size;
    const int nb = geom.n_bins;
    const float c = (h - 1) * 0.5f;
    const float bc = (nb - 1) * 0.5f;
    const float cs = static_cast<float>(std::cos(geom.angles[static_cast<std::size_t>(view)]));
    const float sn = static_cast<float>(std::sin(geom.angles[static_cast<std::size_t>(view)]));
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const float dy = static_cast<float>(y) - c;
        float* irow = img + static_cast<std::size_t>(y) * h;
        for (int x = 0; x < h; ++x) {
            const float u = det_coord(static_cast<float>(x) - c, dy, cs, sn, bc);
            const int b0 = static_cast<int>(std::floor(u));
            const float w = u - static_cast<float>(b0);
            float acc = 0.0f;
            if (b0 >= 0 && b0 < nb) acc += row[b0] * (1.0f - w);
            if (b0 + 1 >= 0 && b0 + 1 < nb) acc += row[b0 + 1] * w;
            irow[x] += acc;
        }
    }
}

void backproject_kernel(const float* sino, const Geometry& geom, float* img) {
    const int h = geom.image_size;
    const int nb = geom.n_bins;
    const int nv = geom.n_views;
    const float c = (h - 1) * 0.5f;
    const float bc = (nb - 1) * 0.5f;
    std::vector<float> cs(static_cast<std::size_t>(nv)), sn(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        cs[static_cast<std::size_t>(v)] = static_cast<float>(std::cos(geom.angles[static_cast<std::size_t>(v)]));
        sn[static_cast<std::size_t>(v)] = static_cast<float>(std::sin(geom.angles[static_cast<std::size_t>(v)]));
    }
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const float dy = static_cast<float>(y) - c;
        float* irow = img + static_cast<std::size_t>(y) * h;
        for (int x = 0; x < h; ++x) {
            const float dx = static_cast<float>(x) - c;
            float acc = 0.0f;
            for (int v = 0; v < nv; ++v) {
                const float u = det_coord(dx, dy, cs[static_cast<std::size_t>(v)],
                                          sn[static_cast<std::size_t>(v)], bc);
                const int b0 = static_cast<int>(std::floor(u));
                const float w = u - static_cast<float>(b0);
                const float* row = sino + static_cast<std::size_t>(v) * nb;
                if (b0 >= 0 && b0 < nb) acc += row[b0] * (1.0f - w);
                if (b0 + 1 >= 0 && b0 + 1 < nb) acc += row[b0 + 1] * w;
            }
            irow[x] = acc;
        }
    }
}

Sinogram radon(const Image& image, const Geometry& geom) {
    check_image(image, geom);
    Sinogram out(geom);
    radon_kernel(image.data.data(), geom, out.data.data());
    return out;
}

Image backproject(const Sinogram& sino) {
    check_sino(sino);
    Image out(sino.geom.image_size);
    backproject_kernel(sino.data.data(), sino.geom, out.data.data());
    return out;
}

std::vector<float> dense_operator(const Geometry& geom) {
    const std::size_t npix = static_cast<std::size_t>(geom.image_size) * geom.image_size;
    if (npix > 4096)
        throw std::invalid_argument("dense_operator: image has " + std::to_string(npix) +
                                    " pixels, limit is 4096");
    const std::size_t nray = static_cast<std::size_t>(geom.n_views) * geom.n_bins;
    std::vector<float> mat(nray * npix, 0.0f);
    std::vector<float> basis(npix, 0.0f);
    std::vector<float> col(nray, 0.0f);
    for (std::size_t j = 0; j < npix; ++j) {
        basis[j] = 1.0f;
        radon_kernel(basis.data(), geom, col.data());
        basis[j] = 0.0f;
        for (std::size_t r = 0; r < nray; ++r) mat[r * npix + j] = col[r];
    }
    return mat;
}

Value radon_op(Graph& g, Value image, const Geometry& geom) {
    const Tensor& ti = g.value(image);
    if (ti.ndim() != 2 || ti.dim(0) != geom.image_size || ti.dim(1) != geom.image_size)
        throw std::invalid_argument("radon_op: image tensor " + ti.shape_str() +
                                    " does not match geometry size " +
                                    std::to_string(geom.image_size));
    Tensor out({geom.n_views, geom.n_bins});
    radon_kernel(ti.data(), geom, out.data());
    return g.node(std::move(out), {image}, [geom](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        Tensor scratch({geom.image_size, geom.image_size});
        backproject_kernel(c.out_grad().data(), geom, scratch.data());
        Tensor& gi = c.input_grad(0);
        for (std::size_t i = 0; i < gi.size(); ++i) gi[i] += scratch[i];
    });
}

Value backproject_op(Graph& g, Value sino, const Geometry& geom) {
    const Tensor& ts = g.value(sino);
    if (ts.ndim() != 2 || ts.dim(0) != geom.n_views || ts.dim(1) != geom.n_bins)
        throw std::invalid_argument("backproject_op: sinogram tensor " + ts.shape_str() +
                                    " does not match geometry " + std::to_string(geom.n_views) +
                                    "x" + std::to_string(geom.n_bins));
    Tensor out({geom.image_size, geom.image_size});
    backproject_kernel(ts.data(), geom, out.data());
    return g.node(std::move(out), {sino}, [geom](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        Tensor scratch({geom.n_views, geom.n_bins});
        radon_kernel(c.out_grad().data(), geom, scratch.data());
        Tensor& gi = c.input_grad(0);
        for (std::size_t i = 0; i < gi.size(); ++i) gi[i] += scratch[i];
    });
}

} // namespace ssct
