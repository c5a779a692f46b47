#pragma once

// Independent reference implementations used as test oracles. These stay
// deliberately naive (dense double loops, finite differences) and must not
// share code with the library paths they check.

#include <cmath>
#include <map>
#include <vector>

#include "ugd/autoencoder.hpp"
#include "ugd/graph.hpp"
#include "ugd/matrix.hpp"
#include "ugd/rng.hpp"

namespace oracle {

// Brute-force min-symmetrized proximity weights from a dense adjacency
// matrix, no CSR, no shared prototype pass.
inline std::map<ugd::EdgePair, double> brute_force_edge_weights(const ugd::Graph& g,
                                                                const ugd::DenseMatrix& x) {
    const int n = g.num_nodes();
    const int d = x.cols();
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges()) {
        adj[e.u][e.v] = 1;
        adj[e.v][e.u] = 1;
    }

    auto proto = [&](int u) {
        std::vector<double> p(d, 0.0);
        int count = 0;
        for (int v = 0; v < n; ++v) {
            if (!adj[u][v]) continue;
            ++count;
            for (int j = 0; j < d; ++j) p[j] += x(v, j);
        }
        if (count == 0) {
            for (int j = 0; j < d; ++j) p[j] = x(u, j);
            return p;
        }
        for (double& value : p) value /= count;
        return p;
    };
    auto cosine = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double dot = 0.0;
        double na = 0.0;
        double nb = 0.0;
        for (int j = 0; j < d; ++j) {
            dot += a[j] * b[j];
            na += a[j] * a[j];
            nb += b[j] * b[j];
        }
        if (na == 0.0 || nb == 0.0) return 0.0;
        return dot / (std::sqrt(na) * std::sqrt(nb));
    };

    std::map<ugd::EdgePair, double> weights;
    for (const auto& e : g.edges()) {
        const auto pu = proto(e.u);
        const auto pv = proto(e.v);
        std::vector<double> xu(d);
        std::vector<double> xv(d);
        for (int j = 0; j < d; ++j) {
            xu[j] = x(e.u, j);
            xv[j] = x(e.v, j);
        }
        weights[e] = std::min(cosine(pu, xv), cosine(pv, xu));
    }
    return weights;
}

// Pairwise form of the neighborhood smoothness:
// (1/2) sum_v sum_{u in N(v)} || x_u/sqrt(d_u) - x_v/sqrt(d_v) ||^2
inline double pairwise_smoothness(const ugd::Graph& g, const ugd::DenseMatrix& x) {
    double total = 0.0;
    for (ugd::NodeId v = 0; v < g.num_nodes(); ++v) {
        const double dv = g.degree(v);
        for (ugd::NodeId u : g.neighbors(v)) {
            const double du = g.degree(u);
            for (int j = 0; j < x.cols(); ++j) {
                const double diff = x(u, j) / std::sqrt(du) - x(v, j) / std::sqrt(dv);
                total += diff * diff;
            }
        }
    }
    return 0.5 * total;
}

// Central finite differences of the full feature-denoising objective with
// respect to every auto-encoder weight; the error is norm-wise relative,
// per weight matrix, and the maximum over the four matrices is returned.
inline double fd_finite_difference_check(const ugd::Graph& g, const ugd::AutoEncoderParams& params,
                                         const ugd::FdConfig& cfg, double h = 1e-6) {
    const ugd::SparseOp a_hat = ugd::sym_norm_adj(g);
    const ugd::SparseOp lap = ugd::normalized_laplacian(g);
    const ugd::DenseMatrix& x0 = g.features();

    const ugd::FdGradients analytic = ugd::fd_gradients(g, a_hat, lap, x0, params, cfg);

    ugd::AutoEncoderParams probe = params;
    auto loss_at_probe = [&]() { return ugd::fd_objective(g, a_hat, lap, x0, probe, cfg).total; };

    double max_rel = 0.0;
    auto check = [&](const ugd::DenseMatrix& analytic_grad, ugd::DenseMatrix& target) {
        ugd::DenseMatrix numeric(analytic_grad.rows(), analytic_grad.cols());
        for (int i = 0; i < target.rows(); ++i) {
            for (int j = 0; j < target.cols(); ++j) {
                const double original = target(i, j);
                target(i, j) = original + h;
                const double up = loss_at_probe();
                target(i, j) = original - h;
                const double down = loss_at_probe();
                target(i, j) = original;
                numeric(i, j) = (up - down) / (2.0 * h);
            }
        }
        double diff = 0.0;
        double scale = 0.0;
        for (std::size_t k = 0; k < numeric.size(); ++k) {
            const double delta = numeric.data()[k] - analytic_grad.data()[k];
            diff += delta * delta;
            scale += numeric.data()[k] * numeric.data()[k];
        }
        max_rel = std::max(max_rel, std::sqrt(diff) / std::max(std::sqrt(scale), 1e-10));
    };
    check(analytic.enc1, probe.enc1.w);
    check(analytic.enc2, probe.enc2.w);
    check(analytic.dec1, probe.dec1.w);
    check(analytic.dec2, probe.dec2.w);
    return max_rel;
}

// Small random graph for property tests: n nodes, each possible edge kept
// with probability p, features standard normal.
inline ugd::Graph random_graph(int n, int dim, double edge_prob, std::uint64_t seed) {
    ugd::Rng rng(seed);
    std::vector<ugd::EdgePair> edges;
    for (ugd::NodeId u = 0; u < n; ++u)
        for (ugd::NodeId v = u + 1; v < n; ++v)
            if (rng.bernoulli(edge_prob)) edges.push_back({u, v});
    ugd::DenseMatrix x(n, dim);
    for (double& value : x.data()) value = rng.normal();
    return ugd::build_graph(std::move(edges), std::move(x));
}

} // namespace oracle
