#pragma once

#include <cmath>
#include <vector>

#include "ugd/graph.hpp"
#include "ugd/matrix.hpp"

namespace ugd {

// Symmetric sparse operator in CSR form. Only needs to multiply dense
// matrices; entry lookup and densification exist for tests.
struct SparseOp {
    NodeId n = 0;
    std::vector<NodeId> row_ptr{0};
    std::vector<NodeId> col;
    std::vector<double> val;

    DenseMatrix apply(const DenseMatrix& h) const {
        require(h.rows() == n, "SparseOp::apply: row count mismatch");
        DenseMatrix out(n, h.cols());
        for (NodeId i = 0; i < n; ++i) {
            double* orow = out.row(i);
            for (NodeId idx = row_ptr[i]; idx < row_ptr[i + 1]; ++idx) {
                const double w = val[idx];
                const double* hrow = h.row(col[idx]);
                for (int j = 0; j < h.cols(); ++j) orow[j] += w * hrow[j];
            }
        }
        return out;
    }

    double entry(NodeId i, NodeId j) const {
        for (NodeId idx = row_ptr[i]; idx < row_ptr[i + 1]; ++idx)
            if (col[idx] == j) return val[idx];
        return 0.0;
    }

    DenseMatrix to_dense() const {
        DenseMatrix d(n, n);
        for (NodeId i = 0; i < n; ++i)
            for (NodeId idx = row_ptr[i]; idx < row_ptr[i + 1]; ++idx) d(i, col[idx]) += val[idx];
        return d;
    }
};

namespace detail {

// Assembles a symmetric CSR operator from (diag, per-edge weight) callbacks.
template <typename DiagFn, typename EdgeFn>
SparseOp assemble_symmetric(const Graph& g, DiagFn diag, EdgeFn edge_weight) {
    SparseOp op;
    op.n = g.num_nodes();
    op.row_ptr.assign(static_cast<std::size_t>(op.n) + 1, 0);
    for (NodeId v = 0; v < op.n; ++v) op.row_ptr[v + 1] = op.row_ptr[v] + g.degree(v) + 1;
    op.col.resize(op.row_ptr[op.n]);
    op.val.resize(op.row_ptr[op.n]);
    for (NodeId v = 0; v < op.n; ++v) {
        NodeId idx = op.row_ptr[v];
        bool placed_diag = false;
        for (NodeId u : g.neighbors(v)) {
            if (!placed_diag && u > v) {
                op.col[idx] = v;
                op.val[idx] = diag(v);
                ++idx;
                placed_diag = true;
            }
            op.col[idx] = u;
            op.val[idx] = edge_weight(v, u);
            ++idx;
        }
        if (!placed_diag) {
            op.col[idx] = v;
            op.val[idx] = diag(v);
        }
    }
    return op;
}

} // namespace detail

// GCN propagation operator D^{-1/2} (A + I) D^{-1/2} with self-loops folded
// into the degrees. Isolated nodes end up with a lone diagonal 1.
inline SparseOp sym_norm_adj(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<double> inv_sqrt_deg(n);
    for (NodeId v = 0; v < n; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)) + 1.0);
    return detail::assemble_symmetric(
        g, [&](NodeId v) { return inv_sqrt_deg[v] * inv_sqrt_deg[v]; },
        [&](NodeId v, NodeId u) { return inv_sqrt_deg[v] * inv_sqrt_deg[u]; });
}

// Normalized Laplacian L = I - D^{-1/2} A D^{-1/2}, no self-loops. A node of
// degree zero contributes a bare diagonal 1, which keeps L positive
// semidefinite and makes L the identity on an empty graph.
inline SparseOp normalized_laplacian(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<double> inv_sqrt_deg(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        const NodeId d = g.degree(v);
        if (d > 0) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return detail::assemble_symmetric(
        g, [](NodeId) { return 1.0; },
        [&](NodeId v, NodeId u) { return -inv_sqrt_deg[v] * inv_sqrt_deg[u]; });
}

// tr(X^T L X) restricted to rows of non-isolated nodes. This matches the
// pairwise sum (1/2) sum_v sum_{u in N(v)} ||x_u/sqrt(d_u) - x_v/sqrt(d_v)||^2
// exactly: isolated nodes have no pair terms, so their rows are excluded.
inline double laplacian_quadratic_form(const SparseOp& lap, const Graph& g, const DenseMatrix& x) {
    const DenseMatrix lx = lap.apply(x);
    double total = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (g.degree(v) == 0) continue;
        const double* xrow = x.row(v);
        const double* lrow = lx.row(v);
        for (int j = 0; j < x.cols(); ++j) total += xrow[j] * lrow[j];
    }
    return total;
}

} // namespace ugd
