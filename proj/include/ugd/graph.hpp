#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/matrix.hpp"

namespace ugd {

using NodeId = std::int32_t;

// Canonical undirected edge, u < v.
struct EdgePair {
    NodeId u = 0;
    NodeId v = 0;
    auto operator<=>(const EdgePair&) const = default;
};

inline EdgePair canonical_edge(NodeId a, NodeId b) {
    return a < b ? EdgePair{a, b} : EdgePair{b, a};
}

enum class Split : std::uint8_t { none = 0, train = 1, val = 2, test = 3 };

struct NodeDegreeView {
    std::vector<NodeId> degrees;
};

// Immutable snapshot of an undirected simple graph: canonical edge set,
// CSR neighbor index, dense feature matrix, optional labels and split masks.
class Graph {
public:
    Graph() = default;

    NodeId num_nodes() const { return n_; }
    int dim() const { return features_.cols(); }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }

    const std::vector<EdgePair>& edges() const { return edges_; }
    const DenseMatrix& features() const { return features_; }

    bool has_labels() const { return !labels_.empty(); }
    bool has_masks() const { return !masks_.empty(); }
    const std::vector<NodeId>& labels() const { return labels_; }
    const std::vector<Split>& masks() const { return masks_; }

    NodeId num_classes() const {
        NodeId c = 0;
        for (NodeId l : labels_) c = std::max(c, static_cast<NodeId>(l + 1));
        return c;
    }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {csr_col_.data() + csr_row_[u], csr_col_.data() + csr_row_[u + 1]};
    }

    NodeId degree(NodeId u) const { return csr_row_[u + 1] - csr_row_[u]; }

    NodeDegreeView degree_view() const {
        NodeDegreeView view;
        view.degrees.resize(n_);
        for (NodeId v = 0; v < n_; ++v) view.degrees[v] = degree(v);
        return view;
    }

    Graph with_features(DenseMatrix features) const {
        require(features.rows() == n_, "with_features: row count must equal node count");
        Graph g = *this;
        g.features_ = std::move(features);
        return g;
    }

    Graph with_edges(std::vector<EdgePair> edges) const {
        Graph g = *this;
        g.set_edges(std::move(edges));
        return g;
    }

    Graph with_labels_and_masks(std::vector<NodeId> labels, std::vector<Split> masks) const {
        Graph g = *this;
        g.validate_labels_masks(labels, masks);
        g.labels_ = std::move(labels);
        g.masks_ = std::move(masks);
        return g;
    }

    friend Graph build_graph(std::vector<EdgePair> edge_list, DenseMatrix features,
                             std::vector<NodeId> labels, std::vector<Split> masks);

private:
    void set_edges(std::vector<EdgePair> edges) {
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            require(e.u >= 0 && e.v < n_, "edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        std::erase_if(edges, [](const EdgePair& e) { return e.u == e.v; });
        edges_ = std::move(edges);
        rebuild_csr();
    }

    void rebuild_csr() {
        csr_row_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (const auto& e : edges_) {
            ++csr_row_[e.u + 1];
            ++csr_row_[e.v + 1];
        }
        for (NodeId v = 0; v < n_; ++v) csr_row_[v + 1] += csr_row_[v];
        csr_col_.assign(static_cast<std::size_t>(csr_row_[n_]), 0);
        std::vector<NodeId> cursor(csr_row_.begin(), csr_row_.end() - 1);
        // edges_ is sorted, so each adjacency list comes out ascending
        for (const auto& e : edges_) csr_col_[cursor[e.u]++] = e.v;
        for (const auto& e : edges_) csr_col_[cursor[e.v]++] = e.u;
        for (NodeId v = 0; v < n_; ++v)
            std::sort(csr_col_.begin() + csr_row_[v], csr_col_.begin() + csr_row_[v + 1]);
    }

    void validate_labels_masks(const std::vector<NodeId>& labels, const std::vector<Split>& masks) const {
        if (!labels.empty()) {
            require(static_cast<NodeId>(labels.size()) == n_, "labels length must equal node count");
            for (NodeId l : labels) require(l >= 0, "labels must be non-negative class ids");
        }
        if (!masks.empty())
            require(static_cast<NodeId>(masks.size()) == n_, "masks length must equal node count");
    }

    NodeId n_ = 0;
    std::vector<EdgePair> edges_;
    std::vector<NodeId> csr_row_{0};
    std::vector<NodeId> csr_col_;
    DenseMatrix features_;
    std::vector<NodeId> labels_;
    std::vector<Split> masks_;
};

// Canonicalizes, deduplicates and drops self-loops. Node count is the feature
// row count; neighbor lists come out in ascending id order.
inline Graph build_graph(std::vector<EdgePair> edge_list, DenseMatrix features,
                         std::vector<NodeId> labels = {}, std::vector<Split> masks = {}) {
    Graph g;
    g.n_ = features.rows();
    require(features.all_finite(), "feature matrix contains non-finite entries");
    g.features_ = std::move(features);
    g.validate_labels_masks(labels, masks);
    g.labels_ = std::move(labels);
    g.masks_ = std::move(masks);
    g.set_edges(std::move(edge_list));
    return g;
}

// |a symmetric-difference b| for canonical sorted edge sets.
inline std::int64_t edge_set_difference(const std::vector<EdgePair>& a, const std::vector<EdgePair>& b) {
    std::int64_t diff = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++diff;
            ++i;
        } else {
            ++diff;
            ++j;
        }
    }
    return diff + static_cast<std::int64_t>(a.size() - i) + static_cast<std::int64_t>(b.size() - j);
}

} // namespace ugd
