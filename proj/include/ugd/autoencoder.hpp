#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/matrix.hpp"
#include "ugd/nn.hpp"
#include "ugd/rng.hpp"
#include "ugd/spectral.hpp"

namespace ugd {

// Two-layer GCN encoder + two-layer GCN decoder, d -> h1 -> h2 -> h1 -> d.
// ReLU between layers, identity on the final decoder layer.
struct AutoEncoderParams {
    nn::GcnLayerParams enc1, enc2, dec1, dec2;
    nn::AdamState adam_enc1, adam_enc2, adam_dec1, adam_dec2;

    static AutoEncoderParams init(int dim, int hidden1, int hidden2, Rng& rng) {
        AutoEncoderParams p;
        p.enc1.w = glorot_uniform(dim, hidden1, rng);
        p.enc2.w = glorot_uniform(hidden1, hidden2, rng);
        p.dec1.w = glorot_uniform(hidden2, hidden1, rng);
        p.dec2.w = glorot_uniform(hidden1, dim, rng);
        p.adam_enc1 = nn::AdamState::like(p.enc1.w);
        p.adam_enc2 = nn::AdamState::like(p.enc2.w);
        p.adam_dec1 = nn::AdamState::like(p.dec1.w);
        p.adam_dec2 = nn::AdamState::like(p.dec2.w);
        return p;
    }
};

struct FdConfig {
    double beta = 0.5;        // residual blend between input and reconstruction
    double gamma = 1e-3;      // smoothness weight
    double lr = 1e-3;
    int epochs_per_step = 200;
    int hidden1 = 64;
    int hidden2 = 32;
    // Re-initialize the auto-encoder each outer iteration by default: a
    // warm-started encoder keeps fitting the corrupted reconstruction
    // targets across iterations, which degrades both the denoised features
    // and the proximity scores computed from them.
    bool warm_start = false;

    void validate() const {
        require(beta >= 0.0 && beta <= 1.0, "beta must be in [0,1]");
        require(gamma >= 0.0, "gamma must be >= 0");
        require(lr > 0.0, "lr must be > 0");
        require(epochs_per_step >= 1, "epochs_per_step must be >= 1");
        require(hidden1 >= 1 && hidden2 >= 1, "hidden widths must be >= 1");
    }
};

struct AutoEncoderCache {
    std::array<nn::GcnLayerCache, 4> layers;
    std::array<DenseMatrix, 4> inputs; // input H of each layer
    DenseMatrix reconstruction;
};

// X_hat = beta * X0 + (1 - beta) * Dec(Enc(X0 | E) | E), with the propagation
// operator taken from the current edge set.
inline DenseMatrix autoencoder_forward(const SparseOp& a_hat, const DenseMatrix& x0,
                                       const AutoEncoderParams& params, double beta,
                                       AutoEncoderCache* cache = nullptr) {
    require(x0.cols() == params.enc1.w.rows(), "autoencoder_forward: feature dim mismatch");
    auto run = [&](int idx, const DenseMatrix& h, const nn::GcnLayerParams& layer, nn::Activation act) {
        if (cache) cache->inputs[idx] = h;
        return nn::gcn_layer_forward(a_hat, h, layer, act, cache ? &cache->layers[idx] : nullptr);
    };
    DenseMatrix h1 = run(0, x0, params.enc1, nn::Activation::relu);
    DenseMatrix h2 = run(1, h1, params.enc2, nn::Activation::relu);
    DenseMatrix h3 = run(2, h2, params.dec1, nn::Activation::relu);
    DenseMatrix recon = run(3, h3, params.dec2, nn::Activation::identity);
    if (cache) cache->reconstruction = recon;
    DenseMatrix x_hat = scaled(x0, beta);
    add_scaled(x_hat, recon, 1.0 - beta);
    return x_hat;
}

// Mean over nodes of the per-row Euclidean distance between X_hat and X0.
inline double recon_loss(const DenseMatrix& x_hat, const DenseMatrix& x0) {
    require(x_hat.same_shape(x0), "recon_loss: shape mismatch");
    const int n = x_hat.rows();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double sq = 0.0;
        for (int j = 0; j < x_hat.cols(); ++j) {
            const double r = x_hat(i, j) - x0(i, j);
            sq += r * r;
        }
        total += std::sqrt(sq);
    }
    return total / n;
}

// dL/dX_hat of recon_loss; rows at exactly zero residual get a zero
// subgradient.
inline DenseMatrix recon_loss_grad(const DenseMatrix& x_hat, const DenseMatrix& x0) {
    require(x_hat.same_shape(x0), "recon_loss_grad: shape mismatch");
    const int n = x_hat.rows();
    DenseMatrix grad(n, x_hat.cols());
    for (int i = 0; i < n; ++i) {
        double sq = 0.0;
        for (int j = 0; j < x_hat.cols(); ++j) {
            const double r = x_hat(i, j) - x0(i, j);
            sq += r * r;
        }
        const double norm = std::sqrt(sq);
        if (norm == 0.0) continue;
        const double inv = 1.0 / (norm * n);
        for (int j = 0; j < x_hat.cols(); ++j) grad(i, j) = (x_hat(i, j) - x0(i, j)) * inv;
    }
    return grad;
}

// tr(X_hat^T L X_hat) over non-isolated rows; equals the pairwise
// neighborhood-difference sum, and is >= 0 up to roundoff.
inline double smooth_loss(const DenseMatrix& x_hat, const SparseOp& laplacian, const Graph& g) {
    require(x_hat.rows() == g.num_nodes(), "smooth_loss: row count mismatch");
    return laplacian_quadratic_form(laplacian, g, x_hat);
}

// dL/dX_hat of smooth_loss: 2 L X_hat with isolated rows zeroed.
inline DenseMatrix smooth_loss_grad(const DenseMatrix& x_hat, const SparseOp& laplacian, const Graph& g) {
    DenseMatrix grad = laplacian.apply(x_hat);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (g.degree(v) == 0)
            for (int j = 0; j < grad.cols(); ++j) grad(v, j) = 0.0;
    for (double& value : grad.data()) value *= 2.0;
    return grad;
}

struct FdObjective {
    double recon = 0.0;
    double smooth = 0.0;
    double total = 0.0;
};

struct FdGradients {
    FdObjective objective;
    DenseMatrix enc1, enc2, dec1, dec2;
};

// Value of L = L_recon + gamma * L_smooth at the current parameters.
inline FdObjective fd_objective(const Graph& g, const SparseOp& a_hat, const SparseOp& laplacian,
                                const DenseMatrix& x0, const AutoEncoderParams& params,
                                const FdConfig& cfg) {
    const DenseMatrix x_hat = autoencoder_forward(a_hat, x0, params, cfg.beta);
    FdObjective obj;
    obj.recon = recon_loss(x_hat, x0);
    obj.smooth = smooth_loss(x_hat, laplacian, g);
    obj.total = obj.recon + cfg.gamma * obj.smooth;
    return obj;
}

// Analytic gradient of the full objective with respect to all four weight
// matrices, flowing through the residual blend and both GCN stacks.
inline FdGradients fd_gradients(const Graph& g, const SparseOp& a_hat, const SparseOp& laplacian,
                                const DenseMatrix& x0, const AutoEncoderParams& params,
                                const FdConfig& cfg) {
    AutoEncoderCache cache;
    const DenseMatrix x_hat = autoencoder_forward(a_hat, x0, params, cfg.beta, &cache);

    FdGradients out;
    out.objective.recon = recon_loss(x_hat, x0);
    out.objective.smooth = smooth_loss(x_hat, laplacian, g);
    out.objective.total = out.objective.recon + cfg.gamma * out.objective.smooth;
    if (!std::isfinite(out.objective.total))
        throw NumericError("fd objective became non-finite (recon=" + std::to_string(out.objective.recon) +
                           ", smooth=" + std::to_string(out.objective.smooth) + ")");

    DenseMatrix d_x_hat = recon_loss_grad(x_hat, x0);
    add_scaled(d_x_hat, smooth_loss_grad(x_hat, laplacian, g), cfg.gamma);
    DenseMatrix upstream = scaled(d_x_hat, 1.0 - cfg.beta); // through the residual blend

    const std::array<const nn::GcnLayerParams*, 4> layers = {&params.dec2, &params.dec1, &params.enc2,
                                                             &params.enc1};
    std::array<DenseMatrix, 4> weight_grads;
    for (int i = 3; i >= 0; --i) {
        nn::GcnLayerGrads grads = nn::gcn_backward(a_hat, cache.layers[i], *layers[3 - i], upstream);
        weight_grads[i] = std::move(grads.w);
        upstream = std::move(grads.input);
    }
    out.enc1 = std::move(weight_grads[0]);
    out.enc2 = std::move(weight_grads[1]);
    out.dec1 = std::move(weight_grads[2]);
    out.dec2 = std::move(weight_grads[3]);
    return out;
}

struct FdStepResult {
    DenseMatrix x_hat;
    std::vector<FdObjective> loss_trace; // one entry per epoch
};

// Runs epochs_per_step full-batch Adam steps on the combined objective under
// a fixed edge set, then returns the blended reconstruction.
inline FdStepResult fd_train_step(const Graph& g, const DenseMatrix& x0, AutoEncoderParams& params,
                                  const FdConfig& cfg) {
    cfg.validate();
    const SparseOp a_hat = sym_norm_adj(g);
    const SparseOp laplacian = normalized_laplacian(g);

    FdStepResult result;
    result.loss_trace.reserve(static_cast<std::size_t>(cfg.epochs_per_step));
    for (int epoch = 0; epoch < cfg.epochs_per_step; ++epoch) {
        FdGradients grads = fd_gradients(g, a_hat, laplacian, x0, params, cfg);
        nn::adam_step(params.enc1.w, grads.enc1, params.adam_enc1, cfg.lr);
        nn::adam_step(params.enc2.w, grads.enc2, params.adam_enc2, cfg.lr);
        nn::adam_step(params.dec1.w, grads.dec1, params.adam_dec1, cfg.lr);
        nn::adam_step(params.dec2.w, grads.dec2, params.adam_dec2, cfg.lr);
        result.loss_trace.push_back(grads.objective);
    }
    result.x_hat = autoencoder_forward(a_hat, x0, params, cfg.beta);
    assert_finite(result.x_hat, "fd_train_step output");
    return result;
}

} // namespace ugd
