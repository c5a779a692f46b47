#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ugd/nn.hpp"
#include "ugd/spectral.hpp"

using namespace ugd;

namespace {

SparseOp identity_op(NodeId n) {
    // a graph with no edges normalizes to the identity operator
    return sym_norm_adj(build_graph({}, DenseMatrix(n, 1)));
}

} // namespace

TEST_CASE("gcn forward with identity operator and identity weights is identity") {
    const SparseOp a_hat = identity_op(3);
    nn::GcnLayerParams params{DenseMatrix::from_rows({{1, 0}, {0, 1}})};
    DenseMatrix h = DenseMatrix::from_rows({{1, 2}, {3, 4}, {-5, 6}});
    const DenseMatrix out = nn::gcn_layer_forward(a_hat, h, params, nn::Activation::identity);
    CHECK(out == h);
}

TEST_CASE("gcn forward on zero input is zero") {
    const SparseOp a_hat = identity_op(2);
    nn::GcnLayerParams params{DenseMatrix::from_rows({{0.3, -0.7}, {1.1, 0.2}})};
    const DenseMatrix out =
        nn::gcn_layer_forward(a_hat, DenseMatrix(2, 2), params, nn::Activation::relu);
    for (double v : out.data()) CHECK(v == 0.0);
}

TEST_CASE("gcn forward on the two-node single-edge graph") {
    // A_hat entries are all 1/2; H = diag(2,2); W = I => output all ones
    Graph g = build_graph({{0, 1}}, DenseMatrix(2, 1));
    const SparseOp a_hat = sym_norm_adj(g);
    nn::GcnLayerParams params{DenseMatrix::from_rows({{1, 0}, {0, 1}})};
    DenseMatrix h = DenseMatrix::from_rows({{2, 0}, {0, 2}});
    const DenseMatrix out = nn::gcn_layer_forward(a_hat, h, params, nn::Activation::identity);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(out(i, j) == doctest::Approx(1.0));
}

TEST_CASE("gcn backward: zero upstream gives zero gradients") {
    Graph g = oracle::random_graph(4, 3, 0.5, 42);
    const SparseOp a_hat = sym_norm_adj(g);
    Rng rng(1);
    nn::GcnLayerParams params{glorot_uniform(3, 2, rng)};
    nn::GcnLayerCache cache;
    nn::gcn_layer_forward(a_hat, g.features(), params, nn::Activation::relu, &cache);
    const auto grads = nn::gcn_backward(a_hat, cache, params, DenseMatrix(4, 2));
    for (double v : grads.w.data()) CHECK(v == 0.0);
    for (double v : grads.input.data()) CHECK(v == 0.0);
}

TEST_CASE("gcn backward: scalar product rule") {
    // h = 3, w = 2, identity everything: d(hw)/dw = 3, d(hw)/dh = 2
    const SparseOp a_hat = identity_op(1);
    nn::GcnLayerParams params{DenseMatrix::from_rows({{2}})};
    nn::GcnLayerCache cache;
    DenseMatrix h = DenseMatrix::from_rows({{3}});
    nn::gcn_layer_forward(a_hat, h, params, nn::Activation::identity, &cache);
    const auto grads = nn::gcn_backward(a_hat, cache, params, DenseMatrix::from_rows({{1}}));
    CHECK(grads.w(0, 0) == doctest::Approx(3.0));
    CHECK(grads.input(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("gcn backward matches finite differences") {
    Graph g = oracle::random_graph(4, 3, 0.6, 7);
    const SparseOp a_hat = sym_norm_adj(g);
    Rng rng(2);
    nn::GcnLayerParams params{glorot_uniform(3, 2, rng)};
    DenseMatrix upstream(4, 2);
    for (double& v : upstream.data()) v = rng.normal();

    nn::GcnLayerCache cache;
    nn::gcn_layer_forward(a_hat, g.features(), params, nn::Activation::relu, &cache);
    const auto grads = nn::gcn_backward(a_hat, cache, params, upstream);

    auto loss_at = [&](const nn::GcnLayerParams& p) {
        const DenseMatrix out = nn::gcn_layer_forward(a_hat, g.features(), p, nn::Activation::relu);
        double s = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) s += out.data()[i] * upstream.data()[i];
        return s;
    };
    const double h = 1e-5;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) {
            nn::GcnLayerParams probe = params;
            probe.w(i, j) += h;
            const double up = loss_at(probe);
            probe.w(i, j) -= 2 * h;
            const double down = loss_at(probe);
            const double numeric = (up - down) / (2 * h);
            CHECK(grads.w(i, j) == doctest::Approx(numeric).epsilon(1e-4));
        }
}

TEST_CASE("adam with zero gradient leaves parameters unchanged") {
    DenseMatrix params = DenseMatrix::from_rows({{1.5, -0.5}});
    nn::AdamState state = nn::AdamState::like(params);
    const DenseMatrix before = params;
    nn::adam_step(params, DenseMatrix(1, 2), state, 0.01);
    CHECK(params == before);
    CHECK(state.t == 1);
}

TEST_CASE("adam first step moves a scalar by about lr") {
    // bias-corrected m_hat = 1 and v_hat = 1 at t=1, so the step is lr/(1+eps)
    DenseMatrix params = DenseMatrix::from_rows({{0.0}});
    nn::AdamState state = nn::AdamState::like(params);
    nn::adam_step(params, DenseMatrix::from_rows({{1.0}}), state, 0.01);
    CHECK(params(0, 0) == doctest::Approx(-0.01).epsilon(1e-6));
}

TEST_CASE("adam under constant positive gradient keeps decreasing") {
    DenseMatrix params = DenseMatrix::from_rows({{1.0}});
    nn::AdamState state = nn::AdamState::like(params);
    const DenseMatrix grad = DenseMatrix::from_rows({{1.0}});
    double previous = params(0, 0);
    for (int step = 0; step < 2; ++step) {
        nn::adam_step(params, grad, state, 0.01);
        CHECK(params(0, 0) < previous);
        previous = params(0, 0);
    }
}

TEST_CASE("adam with lr 0 is an identity on parameters") {
    Rng rng(3);
    DenseMatrix params = glorot_uniform(3, 3, rng);
    DenseMatrix grads(3, 3);
    for (double& v : grads.data()) v = rng.normal();
    const DenseMatrix before = params;
    nn::AdamState state = nn::AdamState::like(params);
    nn::adam_step(params, grads, state, 0.0);
    CHECK(params == before);
}

TEST_CASE("softmax cross entropy on uniform logits is ln(2) for two classes") {
    DenseMatrix logits(3, 2, 0.7);
    const std::vector<NodeId> labels = {0, 1, 0};
    const std::vector<bool> mask = {true, true, false};
    const auto out = nn::softmax_cross_entropy(logits, labels, mask);
    CHECK(out.loss == doctest::Approx(std::log(2.0)));
    for (int j = 0; j < 2; ++j) CHECK(out.grad(2, j) == 0.0); // unmasked row
}

TEST_CASE("softmax cross entropy saturates to zero with a large correct margin") {
    DenseMatrix logits = DenseMatrix::from_rows({{30.0, 0.0}, {0.0, 30.0}});
    const std::vector<NodeId> labels = {0, 1};
    const std::vector<bool> mask = {true, true};
    const auto out = nn::softmax_cross_entropy(logits, labels, mask);
    CHECK(out.loss < 1e-9);
}

TEST_CASE("softmax cross entropy gradient matches finite differences") {
    Rng rng(4);
    DenseMatrix logits(3, 4);
    for (double& v : logits.data()) v = rng.normal();
    const std::vector<NodeId> labels = {2, 0, 3};
    const std::vector<bool> mask = {true, false, true};
    const auto out = nn::softmax_cross_entropy(logits, labels, mask);
    const double h = 1e-6;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            DenseMatrix probe = logits;
            probe(i, j) += h;
            const double up = nn::softmax_cross_entropy(probe, labels, mask).loss;
            probe(i, j) -= 2 * h;
            const double down = nn::softmax_cross_entropy(probe, labels, mask).loss;
            const double numeric = (up - down) / (2 * h);
            CHECK(out.grad(i, j) == doctest::Approx(numeric).epsilon(1e-4));
        }
}

TEST_CASE("softmax cross entropy rejects an empty mask") {
    DenseMatrix logits(2, 2);
    CHECK_THROWS_AS(nn::softmax_cross_entropy(logits, {0, 1}, {false, false}), ValidationError);
}
