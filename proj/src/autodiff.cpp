#include "ssct/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssct {

// ---------------------------------------------------------------------------
// BackwardCtx

const Tensor& BackwardCtx::out_value() const { return g_.nodes_[static_cast<std::size_t>(node_)].value; }
const Tensor& BackwardCtx::out_grad() const { return g_.nodes_[static_cast<std::size_t>(node_)].grad; }
int BackwardCtx::input_count() const {
    return static_cast<int>(g_.nodes_[static_cast<std::size_t>(node_)].inputs.size());
}

const Tensor& BackwardCtx::input_value(int i) const {
    const int idx = g_.nodes_[static_cast<std::size_t>(node_)].inputs[static_cast<std::size_t>(i)];
    return g_.nodes_[static_cast<std::size_t>(idx)].value;
}

bool BackwardCtx::input_needs_grad(int i) const {
    const int idx = g_.nodes_[static_cast<std::size_t>(node_)].inputs[static_cast<std::size_t>(i)];
    return g_.nodes_[static_cast<std::size_t>(idx)].requires_grad;
}

Tensor& BackwardCtx::input_grad(int i) {
    const int idx = g_.nodes_[static_cast<std::size_t>(node_)].inputs[static_cast<std::size_t>(i)];
    Graph::Node& n = g_.nodes_[static_cast<std::size_t>(idx)];
    if (n.grad.size() == 0) n.grad = Tensor(n.value.shape());
    return n.grad;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Node& Graph::at(Value v) {
    if (!v.valid() || v.idx >= node_count()) throw std::invalid_argument("invalid graph value handle");
    return nodes_[static_cast<std::size_t>(v.idx)];
}

const Graph::Node& Graph::at(Value v) const {
    if (!v.valid() || v.idx >= node_count()) throw std::invalid_argument("invalid graph value handle");
    return nodes_[static_cast<std::size_t>(v.idx)];
}

Value Graph::leaf(Tensor t) {
    Node n;
    n.requires_grad = t.requires_grad;
    n.value = std::move(t);
    nodes_.push_back(std::move(n));
    return Value{node_count() - 1};
}

Value Graph::node(Tensor out, std::vector<Value> inputs, BackwardFn fn) {
    Node n;
    n.value = std::move(out);
    n.inputs.reserve(inputs.size());
    for (Value v : inputs) {
        n.requires_grad = n.requires_grad || at(v).requires_grad;
        n.inputs.push_back(v.idx);
    }
    n.backward = std::move(fn);
    nodes_.push_back(std::move(n));
    return Value{node_count() - 1};
}

const Tensor& Graph::value(Value v) const { return at(v).value; }

const Tensor& Graph::grad(Value v) const {
    const Node& n = at(v);
    if (n.grad.size() == 0) throw std::logic_error("gradient not materialized; run backward() first");
    return n.grad;
}

bool Graph::requires_grad(Value v) const { return at(v).requires_grad; }

void Graph::backward(Value loss) {
    Node& ln = at(loss);
    if (ln.value.size() != 1)
        throw std::invalid_argument("backward requires a scalar loss, got shape " + ln.value.shape_str());
    // fresh zero gradient for every node that participates
    for (Node& n : nodes_)
        if (n.requires_grad)
            n.grad = Tensor(n.value.shape());
        else
            n.grad = Tensor();
    if (!ln.requires_grad) return; // no differentiable path; leaf grads stay zero
    ln.grad[0] = 1.0f;
    for (int i = loss.idx; i >= 0; --i) {
        Node& n = nodes_[static_cast<std::size_t>(i)];
        if (!n.requires_grad || !n.backward || n.grad.size() == 0) continue;
        BackwardCtx ctx(*this, i);
        n.backward(ctx);
    }
}

// ---------------------------------------------------------------------------
// elementwise ops

Value Graph::add(Value a, Value b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb))
        throw std::invalid_argument("add: shape mismatch " + ta.shape_str() + " vs " + tb.shape_str());
    Tensor out(ta.shape());
    const std::size_t n = ta.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = ta[i] + tb[i];
    return node(std::move(out), {a, b}, [](BackwardCtx& c) {
        const Tensor& g = c.out_grad();
        for (int k = 0; k < 2; ++k) {
            if (!c.input_needs_grad(k)) continue;
            Tensor& gi = c.input_grad(k);
            for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i];
        }
    });
}

Value Graph::mul(Value a, Value b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb))
        throw std::invalid_argument("mul: shape mismatch " + ta.shape_str() + " vs " + tb.shape_str());
    Tensor out(ta.shape());
    for (std::size_t i = 0; i < ta.size(); ++i) out[i] = ta[i] * tb[i];
    return node(std::move(out), {a, b}, [](BackwardCtx& c) {
        const Tensor& g = c.out_grad();
        const Tensor& va = c.input_value(0);
        const Tensor& vb = c.input_value(1);
        if (c.input_needs_grad(0)) {
            Tensor& ga = c.input_grad(0);
            for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * vb[i];
        }
        if (c.input_needs_grad(1)) {
            Tensor& gb = c.input_grad(1);
            for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * va[i];
        }
    });
}

Value Graph::mul_const(Value a, Tensor m) {
    const Tensor& ta = value(a);
    if (!ta.same_shape(m))
        throw std::invalid_argument("mul_const: shape mismatch " + ta.shape_str() + " vs " + m.shape_str());
    Tensor out(ta.shape());
    for (std::size_t i = 0; i < ta.size(); ++i) out[i] = ta[i] * m[i];
    auto mv = std::make_shared<Tensor>(std::move(m));
    return node(std::move(out), {a}, [mv](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        const Tensor& g = c.out_grad();
        Tensor& gi = c.input_grad(0);
        for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i] * (*mv)[i];
    });
}

Value Graph::scale(Value a, float cscale) {
    const Tensor& ta = value(a);
    Tensor out(ta.shape());
    for (std::size_t i = 0; i < ta.size(); ++i) out[i] = ta[i] * cscale;
    return node(std::move(out), {a}, [cscale](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        const Tensor& g = c.out_grad();
        Tensor& gi = c.input_grad(0);
        for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i] * cscale;
    });
}

Value Graph::sum(Value a) {
    const Tensor& ta = value(a);
    double acc = 0.0;
    for (std::size_t i = 0; i < ta.size(); ++i) acc += ta[i];
    return node(Tensor::scalar(static_cast<float>(acc)), {a}, [](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        const float g = c.out_grad()[0];
        Tensor& gi = c.input_grad(0);
        for (std::size_t i = 0; i < gi.size(); ++i) gi[i] += g;
    });
}

Value Graph::reshape(Value a, std::vector<int> shape) {
    const Tensor& ta = value(a);
    if (shape_numel(shape) != ta.size())
        throw std::invalid_argument("reshape: element count mismatch " + ta.shape_str() + " -> " +
                                    shape_to_string(shape));
    Tensor out(std::move(shape), ta.values());
    return node(std::move(out), {a}, [](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        const Tensor& g = c.out_grad();
        Tensor& gi = c.input_grad(0);
        for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i];
    });
}

Value Graph::leaky_relu(Value a, float slope) {
    if (!(slope > 0.0f && slope < 1.0f))
        throw std::invalid_argument("leaky_relu: slope must be in (0,1), got " + std::to_string(slope));
    const Tensor& ta = value(a);
    Tensor out(ta.shape());
    kernels::leaky_relu_forward(ta.data(), ta.size(), slope, out.data());
    return node(std::move(out), {a}, [slope](BackwardCtx& c) {
        if (!c.input_needs_grad(0)) return;
        const Tensor& g = c.out_grad();
        const Tensor& x = c.input_value(0);
        Tensor& gi = c.input_grad(0);
        // gradient at the kink (x == 0) is defined as the positive-side value
        for (std::size_t i = 0; i < g.size(); ++i) gi[i] += g[i] * (x[i] >= 0.0f ? 1.0f : slope);
    });
}

Value Graph::conv2d(Value input, Value kernel, Value bias) {
    const Tensor& ti = value(input);
    const Tensor& tk = value(kernel);
    const Tensor& tb = value(bias);
    if (ti.ndim() != 4)
        throw std::invalid_argument("conv2d: input must be NCHW, got " + ti.shape_str());
    if (tk.ndim() != 4)
        throw std::invalid_argument("conv2d: kernel must be OIKK, got " + tk.shape_str());
    if (tk.dim(2) != tk.dim(3) || tk.dim(2) % 2 == 0)
        throw std::invalid_argument("conv2d: kernel spatial size must be odd and square, got " + tk.shape_str());
    if (tk.dim(1) != ti.dim(1))
        throw std::invalid_argument("conv2d: input channels " + ti.shape_str() +
                                    " do not match kernel " + tk.shape_str());
    if (tb.ndim() != 1 || tb.dim(0) != tk.dim(0))
        throw std::invalid_argument("conv2d: bias shape " + tb.shape_str() + " does not match kernel " +
                                    tk.shape_str());
    const int n = ti.dim(0), ci = ti.dim(1), h = ti.dim(2), w = ti.dim(3);
    const int co = tk.dim(0), ks = tk.dim(2);
    Tensor out({n, co, h, w});
    kernels::conv2d_forward(ti.data(), n, ci, h, w, tk.data(), co, ks, tb.data(), out.data());
    return node(std::move(out), {input, kernel, bias}, [n, ci, h, w, co, ks](BackwardCtx& c) {
        const Tensor& g = c.out_grad();
        if (c.input_needs_grad(0))
            kernels::conv2d_grad_input(g.data(), n, ci, h, w, c.input_value(1).data(), co, ks,
                                       c.input_grad(0).data());
        if (c.input_needs_grad(1))
            kernels::conv2d_grad_kernel(g.data(), c.input_value(0).data(), n, ci, h, w, co, ks,
                                        c.input_grad(1).data());
        if (c.input_needs_grad(2)) kernels::conv2d_grad_bias(g.data(), n, co, h, w, c.input_grad(2).data());
    });
}

// ---------------------------------------------------------------------------
// Adam

void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state, float lr, float beta1, float beta2, float eps) {
    if (!(lr > 0.0f)) throw std::invalid_argument("adam_step: learning rate must be positive");
    if (params.size() != grads.size())
        throw std::invalid_argument("adam_step: params/grads count mismatch");
    if (state.m.empty()) {
        state.m.resize(params.size());
        state.v.resize(params.size());
        for (std::size_t p = 0; p < params.size(); ++p) {
            state.m[p].assign(params[p]->size(), 0.0f);
            state.v[p].assign(params[p]->size(), 0.0f);
        }
    }
    state.step += 1;
    const double bc1 = 1.0 - std::pow(static_cast<double>(beta1), static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(static_cast<double>(beta2), static_cast<double>(state.step));
    const float inv_bc1 = static_cast<float>(1.0 / bc1);
    const float inv_bc2 = static_cast<float>(1.0 / bc2);
    for (std::size_t p = 0; p < params.size(); ++p) {
        Tensor& w = *params[p];
        const Tensor& g = *grads[p];
        if (!w.same_shape(g))
            throw std::invalid_argument("adam_step: grad shape " + g.shape_str() +
                                        " does not match param " + w.shape_str());
        float* m = state.m[p].data();
        float* v = state.v[p].data();
        const std::size_t sz = w.size();
        for (std::size_t i = 0; i < sz; ++i) {
            m[i] = beta1 * m[i] + (1.0f - beta1) * g[i];
            v[i] = beta2 * v[i] + (1.0f - beta2) * g[i] * g[i];
            const float mhat = m[i] * inv_bc1;
            const float vhat = v[i] * inv_bc2;
            w[i] -= lr * mhat / (std::sqrt(vhat) + eps);
        }
    }
}

// ---------------------------------------------------------------------------
// conv kernels

namespace kernels {

void conv2d_forward(const float* in, int n, int ci, int h, int w, const float* k, int co, int ks,
                    const float* bias, float* out) {
    const int p = ks / 2;
#pragma omp parallel for collapse(2) schedule(static)
    for (int b = 0; b < n; ++b)
        for (int o = 0; o < co; ++o) {
            for (int y = 0; y < h; ++y) {
                float* orow = out + ((static_cast<std::size_t>(b) * co + o) * h + y) * w;
                std::fill(orow, orow + w, bias[o]);
                for (int i = 0; i < ci; ++i)
                    for (int ky = 0; ky < ks; ++ky) {
                        const int iy = y + ky - p;
                        if (iy < 0 || iy >= h) continue;
                        const float* irow =
                            in + ((static_cast<std::size_t>(b) * ci + i) * h + iy) * w;
                        const float* krow = k + ((static_cast<std::size_t>(o) * ci + i) * ks + ky) * ks;
                        for (int kx = 0; kx < ks; ++kx) {
                            const float wv = krow[kx];
                            const int dx = kx - p;
                            const int x0 = dx < 0 ? -dx : 0;
                            const int x1 = dx > 0 ? w - dx : w;
                            const float* ir = irow + dx;
                            for (int x = x0; x < x1; ++x) orow[x] += wv * ir[x];
                        }
                    }
            }
        }
}

// gin[b,i,y,x] += sum_{o,ky,kx} k[o,i,ky,kx] * gout[b,o,y+p-ky,x+p-kx]
void conv2d_grad_input(const float* gout, int n, int ci, int h, int w, const float* k, int co,
                       int ks, float* gin) {
    const int p = ks / 2;
#pragma omp parallel for collapse(2) schedule(static)
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < ci; ++i) {
            for (int y = 0; y < h; ++y) {
                float* grow = gin + ((static_cast<std::size_t>(b) * ci + i) * h + y) * w;
                for (int o = 0; o < co; ++o)
                    for (int ky = 0; ky < ks; ++ky) {
                        const int gy = y + p - ky;
                        if (gy < 0 || gy >= h) continue;
                        const float* orow =
                            gout + ((static_cast<std::size_t>(b) * co + o) * h + gy) * w;
                        const float* krow = k + ((static_cast<std::size_t>(o) * ci + i) * ks + ky) * ks;
                        for (int kx = 0; kx < ks; ++kx) {
                            const float wv = krow[kx];
                            const int dx = p - kx;
                            const int x0 = dx < 0 ? -dx : 0;
                            const int x1 = dx > 0 ? w - dx : w;
                            const float* orr = orow + dx;
                            for (int x = x0; x < x1; ++x) grow[x] += wv * orr[x];
                        }
                    }
            }
        }
}

// gk[o,i,ky,kx] += sum_{b,y,x} gout[b,o,y,x] * in[b,i,y+ky-p,x+kx-p]
void conv2d_grad_kernel(const float* gout, const float* in, int n, int ci, int h, int w, int co,
                        int ks, float* gk) {
    const int p = ks / 2;
#pragma omp parallel for collapse(2) schedule(static)
    for (int o = 0; o < co; ++o)
        for (int i = 0; i < ci; ++i) {
            float* kblock = gk + (static_cast<std::size_t>(o) * ci + i) * ks * ks;
            for (int ky = 0; ky < ks; ++ky)
                for (int kx = 0; kx < ks; ++kx) {
                    const int dx = kx - p;
                    const int x0 = dx < 0 ? -dx : 0;
                    const int x1 = dx > 0 ? w - dx : w;
                    float acc = 0.0f;
                    for (int b = 0; b < n; ++b)
                        for (int y = 0; y < h; ++y) {
                            const int iy = y + ky - p;
                            if (iy < 0 || iy >= h) continue;
                            const float* orow =
                                gout + ((static_cast<std::size_t>(b) * co + o) * h + y) * w;
                            const float* irow =
                                in + ((static_cast<std::size_t>(b) * ci + i) * h + iy) * w + dx;
                            float racc = 0.0f;
#pragma omp simd reduction(+ : racc)
                            for (int x = x0; x < x1; ++x) racc += orow[x] * irow[x];
                            acc += racc;
                        }
                    kblock[ky * ks + kx] += acc;
                }
        }
}

void conv2d_grad_bias(const float* gout, int n, int co, int h, int w, float* gb) {
#pragma omp parallel for schedule(static)
    for (int o = 0; o < co; ++o) {
        float acc = 0.0f;
        for (int b = 0; b < n; ++b) {
            const float* plane = gout + (static_cast<std::size_t>(b) * co + o) * h * w;
            for (int i = 0; i < h * w; ++i) acc += plane[i];
        }
        gb[o] += acc;
    }
}

void leaky_relu_forward(const float* in, std::size_t n, float slope, float* out) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const float x = in[i];
        out[i] = x >= 0.0f ? x : slope * x;
    }
}

} // namespace kernels

} // namespace ssct
