#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/matrix.hpp"

namespace ugd {

// Min-symmetrized neighborhood-proximity scores, one entry per canonical
// edge of the graph they were computed on.
struct EdgeWeightTable {
    std::map<EdgePair, double> weights;

    double at(const EdgePair& e) const {
        auto it = weights.find(e);
        require(it != weights.end(), "edge weight table does not cover this edge");
        return it->second;
    }
};

// theta per outer iteration (1-based): a smaller warm-up threshold for the
// first iterations guards against over-pruning while features are still
// noisy, then the main threshold takes over.
struct ThresholdSchedule {
    double warmup_theta = 0.0;
    double main_theta = 0.1;
    int warmup_iters = 1;

    double theta_at(int iteration) const { return iteration <= warmup_iters ? warmup_theta : main_theta; }

    void validate() const {
        require(warmup_theta <= main_theta, "warmup_theta must be <= main_theta");
        require(warmup_theta >= -1.0 && main_theta <= 1.0, "thresholds must lie in [-1, 1]");
        require(warmup_iters >= 0, "warmup_iters must be >= 0");
    }
};

// Mean of the neighbors' feature rows under the current edge set. An
// isolated node falls back to its own row so downstream scores stay defined.
inline std::vector<double> prototype(const Graph& g, const DenseMatrix& x, NodeId u) {
    require(x.rows() == g.num_nodes(), "prototype: feature rows must equal node count");
    const int d = x.cols();
    std::vector<double> p(d, 0.0);
    const auto neigh = g.neighbors(u);
    if (neigh.empty()) {
        for (int j = 0; j < d; ++j) p[j] = x(u, j);
        return p;
    }
    for (NodeId v : neigh)
        for (int j = 0; j < d; ++j) p[j] += x(v, j);
    const double inv = 1.0 / static_cast<double>(neigh.size());
    for (double& value : p) value *= inv;
    return p;
}

// Cosine similarity; a zero-norm vector carries no affinity evidence and
// scores 0.
inline double proximity(std::span<const double> prototype_u, std::span<const double> x_v) {
    require(prototype_u.size() == x_v.size(), "proximity: dimension mismatch");
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    for (std::size_t j = 0; j < x_v.size(); ++j) {
        if (!std::isfinite(prototype_u[j]) || !std::isfinite(x_v[j]))
            throw ValidationError("proximity: non-finite input");
        dot += prototype_u[j] * x_v[j];
        nu += prototype_u[j] * prototype_u[j];
        nv += x_v[j] * x_v[j];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

// weight(u,v) = min(cos(P_u, x_v), cos(P_v, x_u)) for every current edge,
// prototypes taken over the current edge set.
inline EdgeWeightTable compute_edge_weights(const Graph& g, const DenseMatrix& x) {
    require(x.rows() == g.num_nodes(), "compute_edge_weights: feature rows must equal node count");
    const NodeId n = g.num_nodes();
    const int d = x.cols();

    // prototype pass, then per-edge scoring
    DenseMatrix protos(n, d);
    for (NodeId u = 0; u < n; ++u) {
        const auto p = prototype(g, x, u);
        for (int j = 0; j < d; ++j) protos(u, j) = p[j];
    }

    EdgeWeightTable table;
    for (const auto& e : g.edges()) {
        const std::span<const double> pu(protos.row(e.u), static_cast<std::size_t>(d));
        const std::span<const double> pv(protos.row(e.v), static_cast<std::size_t>(d));
        const std::span<const double> xu(x.row(e.u), static_cast<std::size_t>(d));
        const std::span<const double> xv(x.row(e.v), static_cast<std::size_t>(d));
        table.weights.emplace(e, std::min(proximity(pu, xv), proximity(pv, xu)));
    }
    return table;
}

// Keeps exactly the edges scoring >= theta. Output is a subset of the
// input edge set; nothing is ever re-added.
inline std::vector<EdgePair> filter_edges(const Graph& g, const EdgeWeightTable& table, double theta) {
    std::vector<EdgePair> kept;
    kept.reserve(g.edges().size());
    for (const auto& e : g.edges())
        if (table.at(e) >= theta) kept.push_back(e);
    return kept;
}

} // namespace ugd
