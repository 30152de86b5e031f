#include "ssct/fbp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ssct/fft.hpp"
#include "ssct/projector.hpp"

namespace ssct {

int filter_pad_length(int n_bins) { return next_pow2(2 * n_bins); }
int filter_coeff_count(int n_bins) { return filter_pad_length(n_bins) / 2 + 1; }

double ramp_tap(int n) {
    if (n == 0) return 0.25;
    if (n % 2 == 0) return 0.0;
    const double pn = M_PI * n;
    return -1.0 / (pn * pn);
}

FrequencyFilter ramp_init(int n_bins) {
    if (n_bins < 4) throw std::invalid_argument("ramp_init: n_bins must be >= 4");
    const int pad = filter_pad_length(n_bins);
    const int nh = pad / 2 + 1;
    // circular, even-symmetric spatial kernel
    std::vector<double> h(static_cast<std::size_t>(pad), 0.0);
    h[0] = ramp_tap(0);
    for (int n = 1; n <= pad / 2; ++n) {
        const double t = ramp_tap(n);
        h[static_cast<std::size_t>(n)] = t;
        h[static_cast<std::size_t>(pad - n)] = t;
    }
    // real cosine series of an even sequence gives the real spectrum
    FrequencyFilter f;
    f.n_bins = n_bins;
    f.padded = pad;
    f.coeffs = Tensor({nh});
    for (int k = 0; k < nh; ++k) {
        double acc = h[0];
        for (int n = 1; n < pad / 2; ++n)
            acc += 2.0 * h[static_cast<std::size_t>(n)] * std::cos(2.0 * M_PI * k * n / pad);
        acc += h[static_cast<std::size_t>(pad / 2)] * std::cos(M_PI * k);
        f.coeffs[static_cast<std::size_t>(k)] = static_cast<float>(acc);
    }
    return f;
}

namespace {

void check_filter(const FrequencyFilter& f, int n_bins) {
    if (f.n_bins != n_bins)
        throw std::invalid_argument("filter built for " + std::to_string(f.n_bins) +
                                    " bins applied to sinogram with " + std::to_string(n_bins));
    if (f.padded != filter_pad_length(f.n_bins) ||
        static_cast<int>(f.coeffs.size()) != f.padded / 2 + 1)
        throw std::invalid_argument("filter coefficient length " + std::to_string(f.coeffs.size()) +
                                    " inconsistent with padded length " + std::to_string(f.padded));
}

// conjugate-symmetric extension of the half-spectrum coefficients
std::vector<float> full_spectrum(const float* phi, int n_half, int pad) {
    std::vector<float> full(static_cast<std::size_t>(pad));
    for (int k = 0; k < n_half; ++k) full[static_cast<std::size_t>(k)] = phi[k];
    for (int k = 1; k < pad / 2; ++k) full[static_cast<std::size_t>(pad - k)] = phi[k];
    return full;
}

} // namespace

void filter_rows(const float* sino, int n_views, int n_bins, const float* phi, int n_half,
                 int pad, float* out) {
    const FftPlan plan = make_fft_plan(pad);
    const std::vector<float> full = full_spectrum(phi, n_half, pad);
#pragma omp parallel for schedule(static)
    for (int v = 0; v < n_views; ++v) {
        std::vector<std::complex<float>> buf(static_cast<std::size_t>(pad), {0.0f, 0.0f});
        const float* row = sino + static_cast<std::size_t>(v) * n_bins;
        for (int b = 0; b < n_bins; ++b) buf[static_cast<std::size_t>(b)] = {row[b], 0.0f};
        fft_run(plan, buf.data(), false);
        for (int k = 0; k < pad; ++k) buf[static_cast<std::size_t>(k)] *= full[static_cast<std::size_t>(k)];
        fft_run(plan, buf.data(), true);
        float* orow = out + static_cast<std::size_t>(v) * n_bins;
        // imaginary residue is pure round-off (real symmetric spectrum) and is discarded
        for (int b = 0; b < n_bins; ++b) orow[b] = buf[static_cast<std::size_t>(b)].real();
    }
}

// d loss / d phi[k] accumulated from all views: (1/P) Re(R[k] conj(G[k])),
// doubled for interior k because phi[k] occupies bins k and P-k.
static void filter_grad_phi(const float* sino, const float* gout, int n_views, int n_bins,
                            int n_half, int pad, float* gphi) {
    const FftPlan plan = make_fft_plan(pad);
    std::vector<std::complex<float>> rbuf(static_cast<std::size_t>(pad));
    std::vector<std::complex<float>> gbuf(static_cast<std::size_t>(pad));
    for (int v = 0; v < n_views; ++v) {
        const float* row = sino + static_cast<std::size_t>(v) * n_bins;
        const float* grow = gout + static_cast<std::size_t>(v) * n_bins;
        for (int k = 0; k < pad; ++k) {
            rbuf[static_cast<std::size_t>(k)] = {k < n_bins ? row[k] : 0.0f, 0.0f};
            gbuf[static_cast<std::size_t>(k)] = {k < n_bins ? grow[k] : 0.0f, 0.0f};
        }
        fft_run(plan, rbuf.data(), false);
        fft_run(plan, gbuf.data(), false);
        for (int k = 0; k < n_half; ++k) {
            const std::complex<float> r = rbuf[static_cast<std::size_t>(k)];
            const std::complex<float> gk = gbuf[static_cast<std::size_t>(k)];
            float contrib = (r.real() * gk.real() + r.imag() * gk.imag()) / static_cast<float>(pad);
            if (k != 0 && k != pad / 2) contrib *= 2.0f;
            gphi[k] += contrib;
        }
    }
}

Sinogram filter_sinogram(const Sinogram& sino, const FrequencyFilter& filter) {
    check_filter(filter, sino.geom.n_bins);
    Sinogram out(sino.geom);
    filter_rows(sino.data.data(), sino.geom.n_views, sino.geom.n_bins, filter.coeffs.data(),
                static_cast<int>(filter.coeffs.size()), filter.padded, out.data.data());
    return out;
}

float fbp_scale(int n_views) { return static_cast<float>(M_PI / n_views); }

Image fbp(const Sinogram& sino, const FrequencyFilter& filter) {
    Sinogram filt = filter_sinogram(sino, filter);
    Image img = backproject(filt);
    const float s = fbp_scale(sino.geom.n_views);
    for (float& v : img.data) v *= s;
    apply_circle_mask(img);
    return img;
}

Value filter_sinogram_op(Graph& g, Value sino, Value phi, const Geometry& geom) {
    const Tensor& ts = g.value(sino);
    const Tensor& tp = g.value(phi);
    if (ts.ndim() != 2 || ts.dim(0) != geom.n_views || ts.dim(1) != geom.n_bins)
        throw std::invalid_argument("filter_sinogram_op: sinogram tensor " + ts.shape_str() +
                                    " does not match geometry");
    const int pad = filter_pad_length(geom.n_bins);
    const int nh = pad / 2 + 1;
    if (tp.ndim() != 1 || tp.dim(0) != nh)
        throw std::invalid_argument("filter_sinogram_op: phi length " + tp.shape_str() +
                                    " does not match padded half-spectrum size " + std::to_string(nh));
    const int nv = geom.n_views, nb = geom.n_bins;
    Tensor out({nv, nb});
    filter_rows(ts.data(), nv, nb, tp.data(), nh, pad, out.data());
    return g.node(std::move(out), {sino, phi}, [nv, nb, nh, pad](BackwardCtx& c) {
        const Tensor& gout = c.out_grad();
        if (c.input_needs_grad(0)) {
            // the filtering operator is symmetric (real even spectrum), so the
            // transpose is the same filtering applied to the upstream gradient
            Tensor scratch({nv, nb});
            filter_rows(gout.data(), nv, nb, c.input_value(1).data(), nh, pad, scratch.data());
            Tensor& gi = c.input_grad(0);
            for (std::size_t i = 0; i < gi.size(); ++i) gi[i] += scratch[i];
        }
        if (c.input_needs_grad(1))
            filter_grad_phi(c.input_value(0).data(), gout.data(), nv, nb, nh, pad,
                            c.input_grad(1).data());
    });
}

Value fbp_op(Graph& g, Value sino, Value phi, const Geometry& geom) {
    Value filt = filter_sinogram_op(g, sino, phi, geom);
    Value img = backproject_op(g, filt, geom);
    Value scaled = g.scale(img, fbp_scale(geom.n_views));
    Tensor mask({geom.image_size, geom.image_size}, circle_mask(geom.image_size));
    return g.mul_const(scaled, std::move(mask));
}

} // namespace ssct
