#pragma once

#include <functional>
#include <vector>

#include "ssct/tensor.hpp"

namespace ssct {

class Graph;

// Handle to a node on a Graph tape.
struct Value {
    int idx = -1;
    bool valid() const { return idx >= 0; }
};

// Handed to an op's backward function. Gradients are accumulated (+=) into
// the inputs, so a value consumed by several downstream nodes sums its
// contributions; input_grad() allocates a zero buffer on first touch.
class BackwardCtx {
public:
    const Tensor& out_value() const;
    const Tensor& out_grad() const;
    int input_count() const;
    const Tensor& input_value(int i) const;
    bool input_needs_grad(int i) const;
    Tensor& input_grad(int i);

private:
    friend class Graph;
    BackwardCtx(Graph& g, int node) : g_(g), node_(node) {}
    Graph& g_;
    int node_;
};

// Append-only reverse-mode tape. Nodes record executed operations in forward
// order; backward() walks them in exact reverse order. The full tape is kept
// alive for the life of the Graph (no pruning or checkpointing).
class Graph {
public:
    using BackwardFn = std::function<void(BackwardCtx&)>;

    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    // requires_grad is taken from the tensor's flag
    Value leaf(Tensor t);

    Value add(Value a, Value b);
    Value mul(Value a, Value b); // elementwise
    Value mul_const(Value a, Tensor m);
    Value scale(Value a, float c);
    Value sum(Value a);
    Value reshape(Value a, std::vector<int> shape);
    Value leaky_relu(Value a, float slope);
    // input NCHW, kernel OIKK (odd K), bias O; same-size zero padding
    Value conv2d(Value input, Value kernel, Value bias);

    // Generic differentiable node; the tomographic ops are built on this.
    Value node(Tensor out, std::vector<Value> inputs, BackwardFn fn);

    const Tensor& value(Value v) const;
    const Tensor& grad(Value v) const; // valid after backward()
    bool requires_grad(Value v) const;

    // loss must be a scalar; materializes grads on every requires_grad node
    void backward(Value loss);

    int node_count() const { return static_cast<int>(nodes_.size()); }

private:
    friend class BackwardCtx;
    struct Node {
        Tensor value;
        Tensor grad;
        bool requires_grad = false;
        std::vector<int> inputs;
        BackwardFn backward;
    };
    Node& at(Value v);
    const Node& at(Value v) const;
    std::vector<Node> nodes_;
};

// Adam state for a fixed parameter list; moments are zero-initialized on the
// first call and the step counter starts at 0.
struct AdamState {
    std::vector<std::vector<float>> m, v;
    long step = 0;
};

// Standard bias-corrected adaptive-moment update, in place. params and grads
// are parallel arrays; lr must be positive.
void adam_step(const std::vector<Tensor*>& params, const std::vector<const Tensor*>& grads,
               AdamState& state, float lr, float beta1 = 0.9f, float beta2 = 0.999f,
               float eps = 1e-8f);

// Raw kernels shared by Graph::conv2d, the plain denoiser forward and the
// kernel benchmark. All writes are disjoint per parallel task, so results are
// independent of the thread count.
namespace kernels {
void conv2d_forward(const float* in, int n, int ci, int h, int w, const float* k, int co,
                    int ks, const float* bias, float* out);
void conv2d_grad_input(const float* gout, int n, int ci, int h, int w, const float* k, int co,
                       int ks, float* gin);
void conv2d_grad_kernel(const float* gout, const float* in, int n, int ci, int h, int w, int co,
                        int ks, float* gk);
void conv2d_grad_bias(const float* gout, int n, int co, int h, int w, float* gb);
void leaky_relu_forward(const float* in, std::size_t n, float slope, float* out);
} // namespace kernels

} // namespace ssct
