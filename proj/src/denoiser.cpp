#include "ssct/denoiser.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ssct/rng.hpp"

namespace ssct {

std::size_t DenoiserParams::param_count() const {
    std::size_t n = 0;
    for (const Tensor& w : weights) n += w.size();
    for (const Tensor& b : biases) n += b.size();
    return n;
}

DenoiserParams init_denoiser(std::uint64_t seed, int channels, int layers) {
    if (layers < 2) throw std::invalid_argument("init_denoiser: need at least 2 layers");
    if (channels < 1) throw std::invalid_argument("init_denoiser: need at least 1 channel");
    DenoiserParams p;
    p.layers = layers;
    p.channels = channels;
    p.weights.reserve(static_cast<std::size_t>(layers));
    p.biases.reserve(static_cast<std::size_t>(layers));
    for (int l = 0; l < layers; ++l) {
        const int in_ch = l == 0 ? 1 : channels;
        const int out_ch = l == layers - 1 ? 1 : channels;
        Tensor w({out_ch, in_ch, p.kernel, p.kernel});
        Tensor b({out_ch});
        if (l < layers - 1) {
            // He-style uniform bound from the fan-in; final layer stays zero
            const float bound =
                std::sqrt(6.0f / static_cast<float>(in_ch * p.kernel * p.kernel));
            Rng rng(mix_seed(seed, 0xd0000 + static_cast<std::uint64_t>(l)));
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = rng.uniform(-bound, bound);
        }
        p.weights.push_back(std::move(w));
        p.biases.push_back(std::move(b));
    }
    return p;
}

Image denoise(const DenoiserParams& params, const Image& image) {
    const int h = image.size;
    if (h < 1) throw std::invalid_argument("denoise: empty image");
    const int layers = params.layers;
    std::vector<float> cur(image.data);
    std::vector<float> next;
    int cur_ch = 1;
    for (int l = 0; l < layers; ++l) {
        const Tensor& w = params.weights[static_cast<std::size_t>(l)];
        const Tensor& b = params.biases[static_cast<std::size_t>(l)];
        if (w.dim(1) != cur_ch)
            throw std::invalid_argument("denoise: layer " + std::to_string(l) + " expects " +
                                        std::to_string(w.dim(1)) + " channels, got " +
                                        std::to_string(cur_ch));
        const int out_ch = w.dim(0);
        next.assign(static_cast<std::size_t>(out_ch) * h * h, 0.0f);
        kernels::conv2d_forward(cur.data(), 1, cur_ch, h, h, w.data(), out_ch, w.dim(2), b.data(),
                                next.data());
        if (l < layers - 1)
            kernels::leaky_relu_forward(next.data(), next.size(), params.slope, next.data());
        cur.swap(next);
        cur_ch = out_ch;
    }
    if (cur_ch != 1) throw std::invalid_argument("denoise: network does not end in one channel");
    Image out(h);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = image.data[i] + cur[i];
    return out;
}

DenoiserLeaves denoiser_leaves(Graph& g, const DenoiserParams& params, bool requires_grad) {
    DenoiserLeaves lv;
    for (std::size_t l = 0; l < params.weights.size(); ++l) {
        Tensor w = params.weights[l];
        Tensor b = params.biases[l];
        w.requires_grad = requires_grad;
        b.requires_grad = requires_grad;
        lv.weights.push_back(g.leaf(std::move(w)));
        lv.biases.push_back(g.leaf(std::move(b)));
    }
    return lv;
}

Value denoiser_op(Graph& g, const DenoiserLeaves& leaves, Value image2d,
                  const DenoiserParams& arch) {
    const Tensor& ti = g.value(image2d);
    if (ti.ndim() != 2 || ti.dim(0) != ti.dim(1))
        throw std::invalid_argument("denoiser_op: expected a square 2-D image tensor, got " +
                                    ti.shape_str());
    if (leaves.weights.size() != static_cast<std::size_t>(arch.layers))
        throw std::invalid_argument("denoiser_op: leaf count does not match layer count");
    const int h = ti.dim(0);
    Value x = g.reshape(image2d, {1, 1, h, h});
    for (int l = 0; l < arch.layers; ++l) {
        x = g.conv2d(x, leaves.weights[static_cast<std::size_t>(l)],
                     leaves.biases[static_cast<std::size_t>(l)]);
        if (l < arch.layers - 1) x = g.leaky_relu(x, arch.slope);
    }
    Value res = g.reshape(x, {h, h});
    return g.add(image2d, res);
}

} // namespace ssct
