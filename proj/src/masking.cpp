#include "ssct/masking.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include "ssct/rng.hpp"

namespace ssct {

namespace {
std::atomic<std::uint64_t> g_mask_calls{0};

void check_shapes(const Sinogram& s, const MaskPartition& m) {
    if (s.geom.n_views != m.n_views || s.geom.n_bins != m.n_bins)
        throw std::invalid_argument("mask shape " + std::to_string(m.n_views) + "x" +
                                    std::to_string(m.n_bins) + " does not match sinogram " +
                                    std::to_string(s.geom.n_views) + "x" +
                                    std::to_string(s.geom.n_bins));
}
} // namespace

std::uint64_t masking_call_count() { return g_mask_calls.load(); }

std::size_t MaskPartition::member_count() const {
    std::size_t n = 0;
    for (int v = 0; v < n_views; ++v)
        for (int b = 0; b < n_bins; ++b)
            if (member(v, b)) ++n;
    return n;
}

MaskPartition generate_mask(const Geometry& geom, int stride, int phase, std::uint64_t seed) {
    g_mask_calls.fetch_add(1);
    if (stride < 2 || stride > geom.n_bins / 2)
        throw std::invalid_argument("mask stride " + std::to_string(stride) +
                                    " out of range [2, n_bins/2] for n_bins " +
                                    std::to_string(geom.n_bins));
    if (phase < 0 || phase >= stride)
        throw std::invalid_argument("mask phase " + std::to_string(phase) +
                                    " must be in [0, stride)");
    MaskPartition m;
    m.n_views = geom.n_views;
    m.n_bins = geom.n_bins;
    m.stride = stride;
    m.phase = phase;
    m.seed = seed;
    m.offsets.resize(static_cast<std::size_t>(geom.n_views));
    // offsets depend on the seed only, never on the phase, so the phases of
    // one seed tile the sinogram exactly
    Rng rng(mix_seed(seed, 0x6d61736bull));
    for (int v = 0; v < geom.n_views; ++v)
        m.offsets[static_cast<std::size_t>(v)] = rng.uniform_int(0, stride - 1);
    return m;
}

Sinogram perturb(const Sinogram& sino, const MaskPartition& mask) {
    g_mask_calls.fetch_add(1);
    check_shapes(sino, mask);
    Sinogram out = sino;
    const int nb = mask.n_bins;
    for (int v = 0; v < mask.n_views; ++v) {
        const float* in_row = sino.data.data() + static_cast<std::size_t>(v) * nb;
        float* out_row = out.data.data() + static_cast<std::size_t>(v) * nb;
        for (int b = 0; b < nb; ++b) {
            if (!mask.member(v, b)) continue;
            int left = b - 1;
            while (left >= 0 && mask.member(v, left)) --left;
            int right = b + 1;
            while (right < nb && mask.member(v, right)) ++right;
            const bool has_l = left >= 0, has_r = right < nb;
            if (has_l && has_r)
                out_row[b] = 0.5f * (in_row[left] + in_row[right]);
            else if (has_l)
                out_row[b] = in_row[left];
            else if (has_r)
                out_row[b] = in_row[right];
            // stride <= n_bins/2 guarantees at least one non-member per view
        }
    }
    return out;
}

float masked_mse(const Sinogram& prediction, const Sinogram& target, const MaskPartition& mask) {
    g_mask_calls.fetch_add(1);
    check_shapes(prediction, mask);
    check_shapes(target, mask);
    double acc = 0.0;
    std::size_t count = 0;
    const int nb = mask.n_bins;
    for (int v = 0; v < mask.n_views; ++v)
        for (int b = 0; b < nb; ++b)
            if (mask.member(v, b)) {
                const double d = static_cast<double>(prediction.at(v, b)) - target.at(v, b);
                acc += d * d;
                ++count;
            }
    if (count == 0) throw std::invalid_argument("masked_mse: empty member set J");
    return static_cast<float>(acc / static_cast<double>(count));
}

Value masked_mse_op(Graph& g, Value prediction, Tensor target, const MaskPartition& mask) {
    g_mask_calls.fetch_add(1);
    const Tensor& tp = g.value(prediction);
    if (tp.ndim() != 2 || tp.dim(0) != mask.n_views || tp.dim(1) != mask.n_bins)
        throw std::invalid_argument("masked_mse_op: prediction " + tp.shape_str() +
                                    " does not match mask shape");
    if (!tp.same_shape(target))
        throw std::invalid_argument("masked_mse_op: target " + target.shape_str() +
                                    " does not match prediction " + tp.shape_str());
    const int nb = mask.n_bins;
    double acc = 0.0;
    std::size_t count = 0;
    for (int v = 0; v < mask.n_views; ++v)
        for (int b = 0; b < nb; ++b)
            if (mask.member(v, b)) {
                const std::size_t i = static_cast<std::size_t>(v) * nb + b;
                const double d = static_cast<double>(tp[i]) - target[i];
                acc += d * d;
                ++count;
            }
    if (count == 0) throw std::invalid_argument("masked_mse_op: empty member set J");
    const float loss = static_cast<float>(acc / static_cast<double>(count));
    auto tgt = std::make_shared<Tensor>(std::move(target));
    return g.node(Tensor::scalar(loss), {prediction}, [tgt, mask, count](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        const float go = c.out_grad()[0];
        const Tensor& pred = c.input_value(0);
        Tensor& gi = c.input_grad(0);
        const float s = 2.0f * go / static_cast<float>(count);
        const int nb2 = mask.n_bins;
        for (int v = 0; v < mask.n_views; ++v)
            for (int b = 0; b < nb2; ++b)
                if (mask.member(v, b)) {
                    const std::size_t i = static_cast<std::size_t>(v) * nb2 + b;
                    gi[i] += s * (pred[i] - (*tgt)[i]);
                }
    });
}

} // namespace ssct
