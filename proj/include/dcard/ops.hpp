#pragma once

#include <vector>

#include "dcard/autodiff.hpp"
#include "dcard/rng.hpp"
#include "dcard/tensor.hpp"

namespace dcard {

enum class Mode { train, infer };
enum class PoolMode { max, avg, global_avg };

/// Number of worker threads for the tensor kernels (0 = hardware default).
/// Results are bitwise identical for any setting: every output element is
/// computed by exactly one thread with a fixed reduction order, and split
/// reductions use fixed-size chunks independent of the thread count.
void set_num_threads(int n);
int num_threads();

inline int64_t conv_out_size(int64_t in, int k, int stride, int pad) {
    return (in + 2 * pad - k) / stride + 1;
}

/// 2-D convolution. weight is Cout x Cin x k x k with k in {1, 3}, stride in
/// {1, 2}; bias (length Cout) may be an undefined Var. Differentiable w.r.t.
/// x, weight and bias.
template <typename T>
Var<T> conv2d(const Var<T>& x, const Var<T>& weight, const Var<T>& bias, int stride, int pad);

/// Max / average / global-average pooling. Max routes the gradient to the
/// argmax, ties to the first element in scan order. avg requires pad == 0
/// (the 2x2 stride-2 use drops a trailing odd row/column). global_avg
/// ignores k/stride/pad and yields an N x C vector.
template <typename T>
Var<T> pool2d(const Var<T>& x, PoolMode mode, int k = 0, int stride = 0, int pad = 0);

template <typename T>
struct BatchNormState {
    Tensor<T> running_mean, running_var;
    bool initialized = false;
};

/// Per-channel batch normalization. Train mode normalizes by batch
/// statistics over N,H,W (biased variance) and folds them into the running
/// stats with `running = momentum * running + (1 - momentum) * batch`;
/// infer mode uses the running stats and fails if none were ever recorded.
template <typename T>
Var<T> batch_norm(const Var<T>& x, const Var<T>& gamma, const Var<T>& beta,
                  BatchNormState<T>& state, Mode mode, T eps = T(1e-5), T momentum = T(0.9));

template <typename T>
Var<T> relu(const Var<T>& x);

/// Inverted dropout: train mode zeroes elements with probability `rate` and
/// scales survivors by 1/(1-rate); infer mode and rate 0 are the identity.
/// Mask bits are drawn from `rng` in flat element order.
template <typename T>
Var<T> dropout(const Var<T>& x, double rate, Mode mode, Rng& rng);

/// Concatenate along the channel axis; inputs are placed in argument order.
template <typename T>
Var<T> concat_channels(const std::vector<Var<T>>& xs);

/// out = x * weight^T + bias, x is N x F (trailing dims flattened),
/// weight K x F, bias length K.
template <typename T>
Var<T> fully_connected(const Var<T>& x, const Var<T>& weight, const Var<T>& bias);

template <typename T>
struct SoftmaxXent {
    Var<T> loss;      // scalar
    Tensor<T> probs;  // N x K softmax of the logits
};

/// Mean softmax cross entropy against soft label rows (each must be a
/// distribution). Optional per-sample weights scale each row's term; the
/// logit gradient is weight_n * (probs - labels) / N.
template <typename T>
SoftmaxXent<T> softmax_cross_entropy_soft(const Var<T>& logits, const Tensor<T>& labels,
                                          const std::vector<T>& sample_weights = {});

// small composition helpers (used by heads, tests and the gradient checker)
template <typename T>
Var<T> sum(const Var<T>& x);
template <typename T>
Var<T> add(const Var<T>& a, const Var<T>& b);
template <typename T>
Var<T> mul(const Var<T>& a, const Var<T>& b);
template <typename T>
Var<T> scale(const Var<T>& x, T s);

/// Bilinear resize of a single H x W map (half-pixel centers); used for CAM
/// upsampling, not differentiable.
template <typename T>
Tensor<T> bilinear_resize(const Tensor<T>& map, int64_t out_h, int64_t out_w);

template <typename T>
std::vector<int> argmax_rows(const Tensor<T>& t);

}  // namespace dcard
