#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/rng.hpp"

namespace ugd {

enum class FeatureNoiseMode { gaussian_replace, bernoulli_resample };
enum class StructureNoiseMode { uniform_random, cross_class };

struct NoiseSpec {
    double feature_ratio = 0.0;   // fraction of nodes whose rows are replaced
    FeatureNoiseMode feature_mode = FeatureNoiseMode::gaussian_replace;
    // Replacement scale for gaussian_replace; empty means "per-dimension
    // empirical std of the clean features".
    std::optional<double> gaussian_sigma;
    double structure_ratio = 0.0; // added edges as a fraction of |E|
    StructureNoiseMode structure_mode = StructureNoiseMode::cross_class;
    std::uint64_t seed = 0;

    void validate() const {
        require(feature_ratio >= 0.0 && feature_ratio <= 1.0, "feature_ratio must be in [0,1]");
        require(structure_ratio >= 0.0 && structure_ratio <= 1.0, "structure_ratio must be in [0,1]");
        if (gaussian_sigma) require(*gaussian_sigma > 0.0, "gaussian_sigma must be > 0");
    }
};

// Exact ground truth of an injection: which rows were overwritten (and with
// what), which edges were added. Replaying it reproduces the noisy graph.
struct NoiseLedger {
    std::vector<NodeId> corrupted_nodes;   // ascending
    DenseMatrix replacement_rows;          // one row per corrupted node
    std::vector<EdgePair> injected_edges;  // canonical, ascending
};

inline std::int64_t round_half_up(double x) {
    return static_cast<std::int64_t>(std::floor(x + 0.5));
}

namespace detail {

inline std::vector<NodeId> sample_nodes(NodeId n, std::int64_t count, Rng& rng) {
    std::vector<NodeId> ids(n);
    for (NodeId v = 0; v < n; ++v) ids[v] = v;
    rng.shuffle(ids);
    ids.resize(static_cast<std::size_t>(count));
    std::sort(ids.begin(), ids.end());
    return ids;
}

inline std::vector<double> per_column_std(const DenseMatrix& x) {
    const int n = x.rows();
    const int d = x.cols();
    std::vector<double> mean(d, 0.0);
    std::vector<double> var(d, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) mean[j] += x(i, j);
    for (double& m : mean) m /= std::max(n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            const double delta = x(i, j) - mean[j];
            var[j] += delta * delta;
        }
    std::vector<double> sd(d, 0.0);
    for (int j = 0; j < d; ++j) sd[j] = std::sqrt(var[j] / std::max(n, 1));
    return sd;
}

} // namespace detail

// Replaces round(feature_ratio * n) node rows. gaussian_replace draws each
// replaced entry from N(0, sigma_j^2); bernoulli_resample redraws bits with
// the global density of X. All other rows stay bit-identical.
inline std::pair<Graph, NoiseLedger> inject_feature_noise(const Graph& g, const NoiseSpec& spec) {
    spec.validate();
    const NodeId n = g.num_nodes();
    const int d = g.dim();
    const std::int64_t count = round_half_up(spec.feature_ratio * n);
    Rng rng(derive_seed(spec.seed, "feature-noise"));

    NoiseLedger ledger;
    ledger.corrupted_nodes = detail::sample_nodes(n, count, rng);
    ledger.replacement_rows = DenseMatrix(static_cast<int>(count), d);

    DenseMatrix x = g.features();
    if (spec.feature_mode == FeatureNoiseMode::gaussian_replace) {
        std::vector<double> sigma(d, spec.gaussian_sigma.value_or(0.0));
        if (!spec.gaussian_sigma) sigma = detail::per_column_std(x);
        for (std::size_t i = 0; i < ledger.corrupted_nodes.size(); ++i) {
            const NodeId v = ledger.corrupted_nodes[i];
            for (int j = 0; j < d; ++j) {
                const double value = sigma[j] * rng.normal();
                x(v, j) = value;
                ledger.replacement_rows(static_cast<int>(i), j) = value;
            }
        }
    } else {
        double density = 0.0;
        for (double v : x.data()) density += (v != 0.0) ? 1.0 : 0.0;
        density /= std::max<std::size_t>(x.size(), 1);
        for (std::size_t i = 0; i < ledger.corrupted_nodes.size(); ++i) {
            const NodeId v = ledger.corrupted_nodes[i];
            for (int j = 0; j < d; ++j) {
                const double value = rng.bernoulli(density) ? 1.0 : 0.0;
                x(v, j) = value;
                ledger.replacement_rows(static_cast<int>(i), j) = value;
            }
        }
    }
    return {g.with_features(std::move(x)), std::move(ledger)};
}

// Adds round(structure_ratio * |E|) fresh edges; never removes or duplicates.
// cross_class mode only joins nodes with different labels.
inline std::pair<Graph, NoiseLedger> inject_structure_noise(const Graph& g, const NoiseSpec& spec) {
    spec.validate();
    const NodeId n = g.num_nodes();
    const std::int64_t want = round_half_up(spec.structure_ratio * static_cast<double>(g.num_edges()));
    const bool cross = spec.structure_mode == StructureNoiseMode::cross_class;
    if (cross) {
        require(g.has_labels(), "cross-class structure noise requires labels");
        require(g.num_classes() >= 2, "cross-class structure noise requires at least 2 classes");
    }

    // capacity check against the exact number of candidate non-edges
    std::int64_t candidate_pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    std::int64_t candidate_edges = g.num_edges();
    if (cross) {
        std::vector<std::int64_t> class_sizes(g.num_classes(), 0);
        for (NodeId l : g.labels()) ++class_sizes[l];
        std::int64_t same_class_pairs = 0;
        for (std::int64_t c : class_sizes) same_class_pairs += c * (c - 1) / 2;
        candidate_pairs -= same_class_pairs;
        candidate_edges = 0;
        for (const auto& e : g.edges())
            if (g.labels()[e.u] != g.labels()[e.v]) ++candidate_edges;
    }
    require(candidate_pairs - candidate_edges >= want, "not enough candidate non-edges to inject");

    Rng rng(derive_seed(spec.seed, "structure-noise"));
    std::set<EdgePair> existing(g.edges().begin(), g.edges().end());
    std::set<EdgePair> injected;

    auto admissible = [&](NodeId a, NodeId b) {
        if (a == b) return false;
        if (cross && g.labels()[a] == g.labels()[b]) return false;
        const EdgePair e = canonical_edge(a, b);
        return existing.count(e) == 0 && injected.count(e) == 0;
    };

    std::int64_t attempts_left = 200 * want + 1000;
    while (static_cast<std::int64_t>(injected.size()) < want && attempts_left-- > 0) {
        const NodeId a = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
        const NodeId b = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n)));
        if (admissible(a, b)) injected.insert(canonical_edge(a, b));
    }
    if (static_cast<std::int64_t>(injected.size()) < want) {
        // dense corner: enumerate the remaining candidates and sample directly
        std::vector<EdgePair> pool;
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = a + 1; b < n; ++b)
                if (admissible(a, b)) pool.push_back({a, b});
        rng.shuffle(pool);
        for (const auto& e : pool) {
            if (static_cast<std::int64_t>(injected.size()) >= want) break;
            injected.insert(e);
        }
    }

    NoiseLedger ledger;
    ledger.injected_edges.assign(injected.begin(), injected.end());
    std::vector<EdgePair> edges = g.edges();
    edges.insert(edges.end(), ledger.injected_edges.begin(), ledger.injected_edges.end());
    return {g.with_edges(std::move(edges)), std::move(ledger)};
}

// Applies both injectors (features first); sub-streams are independent, so
// the combined result equals applying each in isolation.
inline std::pair<Graph, NoiseLedger> inject_noise(const Graph& g, const NoiseSpec& spec) {
    auto [noisy_features, feature_ledger] = inject_feature_noise(g, spec);
    auto [noisy, structure_ledger] = inject_structure_noise(noisy_features, spec);
    NoiseLedger ledger;
    ledger.corrupted_nodes = std::move(feature_ledger.corrupted_nodes);
    ledger.replacement_rows = std::move(feature_ledger.replacement_rows);
    ledger.injected_edges = std::move(structure_ledger.injected_edges);
    return {std::move(noisy), std::move(ledger)};
}

// Reconstructs the noisy graph from a clean graph plus a ledger.
inline Graph replay_ledger(const Graph& clean, const NoiseLedger& ledger) {
    DenseMatrix x = clean.features();
    for (std::size_t i = 0; i < ledger.corrupted_nodes.size(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            x(ledger.corrupted_nodes[i], j) = ledger.replacement_rows(static_cast<int>(i), j);
    std::vector<EdgePair> edges = clean.edges();
    edges.insert(edges.end(), ledger.injected_edges.begin(), ledger.injected_edges.end());
    return clean.with_edges(std::move(edges)).with_features(std::move(x));
}

struct SbmParams {
    NodeId n = 400;
    NodeId k = 4;
    double p_in = 0.05;
    double p_out = 0.005;
    double center_separation = 1.0;
    int dim = 64;              // feature dimensionality, must be >= k
    double feature_noise_std = 0.25;
    std::uint64_t seed = 1;
};

// Stochastic block model with homophilous Gaussian features. Class centers
// sit at (sep/sqrt(2)) * e_c, so every pair of centers is exactly
// `center_separation` apart. Includes labels and a stratified 10/10/80
// train/val/test split.
inline Graph generate_sbm(const SbmParams& p) {
    require(p.n >= 1 && p.k >= 1 && p.k <= p.n, "sbm: need 1 <= k <= n");
    require(p.p_out >= 0.0 && p.p_out < p.p_in && p.p_in <= 1.0, "sbm: need 0 <= p_out < p_in <= 1");
    require(p.dim >= p.k, "sbm: feature dim must be at least k");
    require(p.feature_noise_std >= 0.0, "sbm: feature_noise_std must be >= 0");

    Rng rng(derive_seed(p.seed, "sbm"));

    // blocks of size floor(n/k); the last block absorbs the remainder
    const NodeId base = p.n / p.k;
    std::vector<NodeId> labels(p.n);
    for (NodeId v = 0; v < p.n; ++v) labels[v] = std::min<NodeId>(v / base, p.k - 1);

    std::vector<EdgePair> edges;
    for (NodeId u = 0; u < p.n; ++u)
        for (NodeId v = u + 1; v < p.n; ++v)
            if (rng.bernoulli(labels[u] == labels[v] ? p.p_in : p.p_out)) edges.push_back({u, v});

    const double center_scale = p.center_separation / std::sqrt(2.0);
    DenseMatrix x(p.n, p.dim);
    for (NodeId v = 0; v < p.n; ++v)
        for (int j = 0; j < p.dim; ++j)
            x(v, j) = (j == labels[v] ? center_scale : 0.0) + p.feature_noise_std * rng.normal();

    // stratified 10/10/80 split, deterministic given the seed
    std::vector<Split> masks(p.n, Split::test);
    for (NodeId c = 0; c < p.k; ++c) {
        std::vector<NodeId> members;
        for (NodeId v = 0; v < p.n; ++v)
            if (labels[v] == c) members.push_back(v);
        rng.shuffle(members);
        const std::size_t n_train = std::max<std::size_t>(1, members.size() / 10);
        const std::size_t n_val = std::max<std::size_t>(1, members.size() / 10);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i < n_train) masks[members[i]] = Split::train;
            else if (i < n_train + n_val) masks[members[i]] = Split::val;
        }
    }

    return build_graph(std::move(edges), std::move(x), std::move(labels), std::move(masks));
}

} // namespace ugd
