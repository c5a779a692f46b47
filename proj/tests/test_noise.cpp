#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ugd/noise.hpp"

using namespace ugd;

namespace {

Graph labeled_two_block_graph() {
    SbmParams p;
    p.n = 20;
    p.k = 2;
    p.p_in = 0.6;
    p.p_out = 0.05;
    p.dim = 4;
    p.seed = 5;
    return generate_sbm(p);
}

} // namespace

TEST_CASE("feature noise with ratio 0 is a no-op") {
    Graph g = oracle::random_graph(6, 3, 0.4, 1);
    NoiseSpec spec;
    spec.feature_ratio = 0.0;
    auto [noisy, ledger] = inject_feature_noise(g, spec);
    CHECK(noisy.features() == g.features());
    CHECK(ledger.corrupted_nodes.empty());
}

TEST_CASE("feature noise with ratio 1 replaces every row") {
    Graph g = oracle::random_graph(5, 3, 0.4, 2);
    NoiseSpec spec;
    spec.feature_ratio = 1.0;
    spec.seed = 3;
    auto [noisy, ledger] = inject_feature_noise(g, spec);
    REQUIRE(ledger.corrupted_nodes.size() == 5);
    for (NodeId v = 0; v < 5; ++v) {
        bool differs = false;
        for (int j = 0; j < 3; ++j)
            if (noisy.features()(v, j) != g.features()(v, j)) differs = true;
        CHECK(differs);
    }
}

TEST_CASE("feature noise corrupts round(ratio * n) nodes and nothing else") {
    Graph g = oracle::random_graph(10, 4, 0.3, 3);
    NoiseSpec spec;
    spec.feature_ratio = 0.5;
    spec.seed = 11;
    auto [noisy, ledger] = inject_feature_noise(g, spec);
    CHECK(ledger.corrupted_nodes.size() == 5);
    const std::set<NodeId> corrupted(ledger.corrupted_nodes.begin(), ledger.corrupted_nodes.end());
    for (NodeId v = 0; v < 10; ++v) {
        if (corrupted.count(v)) continue;
        for (int j = 0; j < 4; ++j) CHECK(noisy.features()(v, j) == g.features()(v, j));
    }
    CHECK(noisy.edges() == g.edges()); // feature injection never touches edges
}

TEST_CASE("bernoulli-resample writes only zeros and ones") {
    DenseMatrix x(8, 5);
    Rng rng(7);
    for (double& v : x.data()) v = rng.bernoulli(0.3) ? 1.0 : 0.0;
    Graph g = build_graph({{0, 1}, {2, 3}}, std::move(x));
    NoiseSpec spec;
    spec.feature_ratio = 0.5;
    spec.feature_mode = FeatureNoiseMode::bernoulli_resample;
    spec.seed = 13;
    auto [noisy, ledger] = inject_feature_noise(g, spec);
    for (NodeId v : ledger.corrupted_nodes)
        for (int j = 0; j < 5; ++j)
            CHECK((noisy.features()(v, j) == 0.0 || noisy.features()(v, j) == 1.0));
}

TEST_CASE("structure noise with ratio 0 is a no-op") {
    Graph g = oracle::random_graph(8, 2, 0.4, 4);
    NoiseSpec spec;
    spec.structure_ratio = 0.0;
    spec.structure_mode = StructureNoiseMode::uniform_random;
    auto [noisy, ledger] = inject_structure_noise(g, spec);
    CHECK(noisy.edges() == g.edges());
    CHECK(ledger.injected_edges.empty());
}

TEST_CASE("structure noise adds exactly round(ratio * |E|) fresh edges") {
    // a deterministic 100-edge graph: a path over 101 nodes
    std::vector<EdgePair> edges;
    for (NodeId v = 0; v < 100; ++v) edges.push_back({v, static_cast<NodeId>(v + 1)});
    Graph g = build_graph(std::move(edges), DenseMatrix(101, 2));
    NoiseSpec spec;
    spec.structure_ratio = 0.1;
    spec.structure_mode = StructureNoiseMode::uniform_random;
    spec.seed = 21;
    auto [noisy, ledger] = inject_structure_noise(g, spec);
    CHECK(ledger.injected_edges.size() == 10);
    CHECK(noisy.num_edges() == 110);
    const std::set<EdgePair> original(g.edges().begin(), g.edges().end());
    for (const auto& e : ledger.injected_edges) {
        CHECK(original.count(e) == 0);
        CHECK(e.u != e.v);
    }
}

TEST_CASE("cross-class structure noise only joins different labels") {
    Graph g = labeled_two_block_graph();
    NoiseSpec spec;
    spec.structure_ratio = 0.3;
    spec.structure_mode = StructureNoiseMode::cross_class;
    spec.seed = 17;
    auto [noisy, ledger] = inject_structure_noise(g, spec);
    REQUIRE(!ledger.injected_edges.empty());
    for (const auto& e : ledger.injected_edges) CHECK(g.labels()[e.u] != g.labels()[e.v]);
}

TEST_CASE("cross-class mode requires labels") {
    Graph g = oracle::random_graph(6, 2, 0.5, 6);
    NoiseSpec spec;
    spec.structure_ratio = 0.5;
    spec.structure_mode = StructureNoiseMode::cross_class;
    CHECK_THROWS_AS(inject_structure_noise(g, spec), ValidationError);
}

TEST_CASE("injection fails when no candidate non-edges remain") {
    // complete graph on 4 nodes
    Graph g = build_graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, DenseMatrix(4, 1));
    NoiseSpec spec;
    spec.structure_ratio = 0.5;
    spec.structure_mode = StructureNoiseMode::uniform_random;
    CHECK_THROWS_AS(inject_structure_noise(g, spec), ValidationError);
}

TEST_CASE("noise injection is deterministic and the ledger replays exactly") {
    Graph g = labeled_two_block_graph();
    NoiseSpec spec;
    spec.feature_ratio = 0.4;
    spec.structure_ratio = 0.2;
    spec.seed = 99;
    auto [noisy_a, ledger_a] = inject_noise(g, spec);
    auto [noisy_b, ledger_b] = inject_noise(g, spec);
    CHECK(noisy_a.features() == noisy_b.features());
    CHECK(noisy_a.edges() == noisy_b.edges());
    CHECK(ledger_a.corrupted_nodes == ledger_b.corrupted_nodes);
    CHECK(ledger_a.injected_edges == ledger_b.injected_edges);

    const Graph replayed = replay_ledger(g, ledger_a);
    CHECK(replayed.features() == noisy_a.features());
    CHECK(replayed.edges() == noisy_a.edges());
}

TEST_CASE("sbm at extreme probabilities is deterministic") {
    SbmParams p;
    p.n = 4;
    p.k = 2;
    p.p_in = 1.0;
    p.p_out = 0.0;
    p.dim = 2;
    Graph g = generate_sbm(p);
    CHECK(g.edges() == std::vector<EdgePair>{{0, 1}, {2, 3}});
    CHECK(g.labels() == std::vector<NodeId>{0, 0, 1, 1});
}

TEST_CASE("sbm rejects p_in <= p_out") {
    SbmParams p;
    p.p_in = 0.05;
    p.p_out = 0.05;
    CHECK_THROWS_AS(generate_sbm(p), ValidationError);
}

TEST_CASE("sbm intra-block edge count matches the binomial expectation") {
    // expectation: 4 blocks * C(100,2) * 0.05 = 990
    double total_intra = 0.0;
    const int seeds = 20;
    for (int s = 1; s <= seeds; ++s) {
        SbmParams p;
        p.seed = static_cast<std::uint64_t>(s);
        const Graph g = generate_sbm(p);
        for (const auto& e : g.edges())
            if (g.labels()[e.u] == g.labels()[e.v]) total_intra += 1.0;
    }
    const double mean_intra = total_intra / seeds;
    CHECK(mean_intra > 990.0 * 0.85);
    CHECK(mean_intra < 990.0 * 1.15);
}

TEST_CASE("sbm split is stratified 10/10/80 and deterministic") {
    SbmParams p;
    p.seed = 3;
    const Graph a = generate_sbm(p);
    const Graph b = generate_sbm(p);
    CHECK(a.features() == b.features());
    CHECK(a.edges() == b.edges());
    CHECK(a.masks() == b.masks());
    int train = 0;
    int val = 0;
    int test = 0;
    for (Split s : a.masks()) {
        if (s == Split::train) ++train;
        if (s == Split::val) ++val;
        if (s == Split::test) ++test;
    }
    CHECK(train == 40);
    CHECK(val == 40);
    CHECK(test == 320);
}
