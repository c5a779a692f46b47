#pragma once

#include <cmath>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/matrix.hpp"
#include "ugd/spectral.hpp"

namespace ugd::nn {

enum class Activation { relu, identity };

// One GCN layer holds a single weight matrix; no bias, matching the
// canonical formulation.
struct GcnLayerParams {
    DenseMatrix w; // in_dim x out_dim
};

// Forward cache of act(A_hat * H * W): everything the backward pass reads.
struct GcnLayerCache {
    DenseMatrix propagated;     // A_hat * H
    DenseMatrix pre_activation; // (A_hat * H) * W
    Activation activation = Activation::identity;
};

inline DenseMatrix gcn_layer_forward(const SparseOp& a_hat, const DenseMatrix& h,
                                     const GcnLayerParams& params, Activation activation,
                                     GcnLayerCache* cache = nullptr) {
    require(h.cols() == params.w.rows(), "gcn_layer_forward: H columns must match W rows");
    DenseMatrix propagated = a_hat.apply(h);
    DenseMatrix z = matmul(propagated, params.w);
    DenseMatrix out = z;
    if (activation == Activation::relu) relu_inplace(out);
    assert_finite(out, "gcn layer output");
    if (cache) {
        cache->propagated = std::move(propagated);
        cache->pre_activation = std::move(z);
        cache->activation = activation;
    }
    return out;
}

struct GcnLayerGrads {
    DenseMatrix w;       // dL/dW
    DenseMatrix input;   // dL/dH
};

// Reverse-mode pass. A_hat is symmetric, so dH = A_hat * (dZ * W^T).
inline GcnLayerGrads gcn_backward(const SparseOp& a_hat, const GcnLayerCache& cache,
                                  const GcnLayerParams& params, const DenseMatrix& upstream) {
    require(upstream.same_shape(cache.pre_activation), "gcn_backward: upstream shape mismatch");
    DenseMatrix dz = upstream;
    if (cache.activation == Activation::relu) relu_backward_inplace(dz, cache.pre_activation);
    GcnLayerGrads grads;
    grads.w = matmul_tn(cache.propagated, dz);
    grads.input = a_hat.apply(matmul_nt(dz, params.w));
    return grads;
}

// Adam with fixed (beta1, beta2, eps) defaults; weight decay enters as an
// L2 term added to the gradient before the moment updates.
struct AdamState {
    DenseMatrix m;
    DenseMatrix v;
    std::int64_t t = 0;

    static AdamState like(const DenseMatrix& params) {
        return {DenseMatrix(params.rows(), params.cols()), DenseMatrix(params.rows(), params.cols()), 0};
    }
};

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;

inline void adam_step(DenseMatrix& params, const DenseMatrix& grads, AdamState& state, double lr,
                      double weight_decay = 0.0) {
    require(params.same_shape(grads), "adam_step: gradient shape mismatch");
    require(params.same_shape(state.m) && params.same_shape(state.v), "adam_step: state shape mismatch");
    state.t += 1;
    const double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads.data()[i] + weight_decay * params.data()[i];
        double& m = state.m.data()[i];
        double& v = state.v.data()[i];
        m = kAdamBeta1 * m + (1.0 - kAdamBeta1) * g;
        v = kAdamBeta2 * v + (1.0 - kAdamBeta2) * g * g;
        const double m_hat = m / bc1;
        const double v_hat = v / bc2;
        params.data()[i] -= lr * m_hat / (std::sqrt(v_hat) + kAdamEps);
    }
}

struct LossAndGrad {
    double loss = 0.0;
    DenseMatrix grad;
};

// Mean cross-entropy over masked rows; gradient is zero elsewhere.
inline LossAndGrad softmax_cross_entropy(const DenseMatrix& logits, const std::vector<NodeId>& labels,
                                         const std::vector<bool>& mask) {
    const int n = logits.rows();
    const int c = logits.cols();
    require(static_cast<int>(labels.size()) == n, "softmax_cross_entropy: labels length mismatch");
    require(static_cast<int>(mask.size()) == n, "softmax_cross_entropy: mask length mismatch");
    std::int64_t masked = 0;
    for (int i = 0; i < n; ++i)
        if (mask[i]) ++masked;
    require(masked > 0, "softmax_cross_entropy: empty mask");

    LossAndGrad out;
    out.grad = DenseMatrix(n, c);
    const double inv = 1.0 / static_cast<double>(masked);
    for (int i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        require(labels[i] >= 0 && labels[i] < c, "softmax_cross_entropy: label out of range");
        const double* row = logits.row(i);
        double row_max = row[0];
        for (int j = 1; j < c; ++j) row_max = std::max(row_max, row[j]);
        double denom = 0.0;
        for (int j = 0; j < c; ++j) denom += std::exp(row[j] - row_max);
        const double log_denom = std::log(denom) + row_max;
        out.loss += (log_denom - row[labels[i]]) * inv;
        for (int j = 0; j < c; ++j)
            out.grad(i, j) = (std::exp(row[j] - log_denom) - (j == labels[i] ? 1.0 : 0.0)) * inv;
    }
    if (!std::isfinite(out.loss)) throw NumericError("softmax_cross_entropy: non-finite loss");
    return out;
}

} // namespace ugd::nn
