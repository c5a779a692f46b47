#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ugd/driver.hpp"
#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/matrix.hpp"
#include "ugd/nn.hpp"
#include "ugd/noise.hpp"
#include "ugd/rng.hpp"
#include "ugd/spectral.hpp"

namespace ugd {

struct ClassifierConfig {
    int hidden = 16;
    double lr = 0.01;
    double weight_decay = 1e-3;
    int epochs = 100;
    double dropout = 0.5;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

    void validate() const {
        require(hidden >= 1, "classifier hidden width must be >= 1");
        require(epochs >= 1, "classifier epochs must be >= 1");
        require(dropout >= 0.0 && dropout < 1.0, "dropout must be in [0,1)");
        require(lr > 0.0, "classifier lr must be > 0");
        require(!seeds.empty(), "seed list must not be empty");
    }
};

struct TrainedClassifier {
    DenseMatrix w1;
    DenseMatrix w2;
    double best_val_accuracy = 0.0;
};

namespace detail {

inline std::vector<bool> mask_of(const Graph& g, Split split) {
    std::vector<bool> mask(g.num_nodes(), false);
    for (NodeId v = 0; v < g.num_nodes(); ++v) mask[v] = g.masks()[v] == split;
    return mask;
}

// Inverted dropout: surviving entries are scaled by 1/keep. The returned
// mask holds the per-entry multiplier (0 or 1/keep) for the backward pass.
inline DenseMatrix dropout(const DenseMatrix& m, double rate, Rng& rng, DenseMatrix* mask = nullptr) {
    if (rate <= 0.0) {
        if (mask) *mask = DenseMatrix(m.rows(), m.cols(), 1.0);
        return m;
    }
    DenseMatrix out = m;
    DenseMatrix factors(m.rows(), m.cols());
    const double keep = 1.0 - rate;
    const double scale = 1.0 / keep;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double factor = rng.bernoulli(keep) ? scale : 0.0;
        factors.data()[i] = factor;
        out.data()[i] *= factor;
    }
    if (mask) *mask = std::move(factors);
    return out;
}

inline DenseMatrix classifier_logits(const SparseOp& a_hat, const DenseMatrix& x, const DenseMatrix& w1,
                                     const DenseMatrix& w2) {
    DenseMatrix h = matmul(a_hat.apply(x), w1);
    relu_inplace(h);
    return matmul(a_hat.apply(h), w2);
}

inline double masked_accuracy(const DenseMatrix& logits, const std::vector<NodeId>& labels,
                              const std::vector<bool>& mask) {
    std::int64_t correct = 0;
    std::int64_t total = 0;
    for (int i = 0; i < logits.rows(); ++i) {
        if (!mask[i]) continue;
        int best = 0;
        for (int j = 1; j < logits.cols(); ++j)
            if (logits(i, j) > logits(i, best)) best = j;
        correct += (best == labels[i]) ? 1 : 0;
        ++total;
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

} // namespace detail

// Full-batch training of a two-layer GCN on the train mask; the returned
// weights are the snapshot from the epoch with the best validation accuracy.
inline TrainedClassifier train_classifier(const Graph& g, const ClassifierConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    require(g.has_labels() && g.has_masks(), "train_classifier requires labels and masks");
    const NodeId classes = g.num_classes();
    require(classes >= 2, "train_classifier requires at least 2 classes");

    const SparseOp a_hat = sym_norm_adj(g);
    const std::vector<bool> train_mask = detail::mask_of(g, Split::train);
    const std::vector<bool> val_mask = detail::mask_of(g, Split::val);
    require(std::find(train_mask.begin(), train_mask.end(), true) != train_mask.end(),
            "train mask is empty");

    Rng init_rng(derive_seed(seed, "classifier-init"));
    Rng dropout_rng(derive_seed(seed, "classifier-dropout"));
    DenseMatrix w1 = glorot_uniform(g.dim(), cfg.hidden, init_rng);
    DenseMatrix w2 = glorot_uniform(cfg.hidden, classes, init_rng);
    nn::AdamState adam1 = nn::AdamState::like(w1);
    nn::AdamState adam2 = nn::AdamState::like(w2);

    TrainedClassifier best{w1, w2, -1.0};
    const bool has_val = std::find(val_mask.begin(), val_mask.end(), true) != val_mask.end();

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // forward with dropout on the input and the hidden layer
        DenseMatrix x_drop = detail::dropout(g.features(), cfg.dropout, dropout_rng);
        DenseMatrix m1 = a_hat.apply(x_drop);
        DenseMatrix z1 = matmul(m1, w1);
        DenseMatrix h = z1;
        relu_inplace(h);
        DenseMatrix hidden_mask;
        DenseMatrix h_drop = detail::dropout(h, cfg.dropout, dropout_rng, &hidden_mask);
        DenseMatrix m2 = a_hat.apply(h_drop);
        DenseMatrix logits = matmul(m2, w2);

        nn::LossAndGrad ce = nn::softmax_cross_entropy(logits, g.labels(), train_mask);

        DenseMatrix grad_w2 = matmul_tn(m2, ce.grad);
        DenseMatrix grad_h = a_hat.apply(matmul_nt(ce.grad, w2));
        for (std::size_t i = 0; i < grad_h.size(); ++i) grad_h.data()[i] *= hidden_mask.data()[i];
        relu_backward_inplace(grad_h, z1);
        DenseMatrix grad_w1 = matmul_tn(m1, grad_h);

        nn::adam_step(w1, grad_w1, adam1, cfg.lr, cfg.weight_decay);
        nn::adam_step(w2, grad_w2, adam2, cfg.lr, cfg.weight_decay);

        const DenseMatrix eval_logits = detail::classifier_logits(a_hat, g.features(), w1, w2);
        const double val_acc = has_val ? detail::masked_accuracy(eval_logits, g.labels(), val_mask)
                                       : detail::masked_accuracy(eval_logits, g.labels(), train_mask);
        if (val_acc > best.best_val_accuracy) best = {w1, w2, val_acc};
    }
    return best;
}

// Argmax-prediction accuracy of a trained classifier on one split.
inline double accuracy(const TrainedClassifier& model, const Graph& g, Split split) {
    require(g.has_labels() && g.has_masks(), "accuracy requires labels and masks");
    const std::vector<bool> mask = detail::mask_of(g, split);
    require(std::find(mask.begin(), mask.end(), true) != mask.end(), "accuracy: empty mask");
    const SparseOp a_hat = sym_norm_adj(g);
    const DenseMatrix logits = detail::classifier_logits(a_hat, g.features(), model.w1, model.w2);
    return detail::masked_accuracy(logits, g.labels(), mask);
}

struct BenchmarkRow {
    std::string variant;
    std::uint64_t seed = 0;
    double val_accuracy = 0.0;
    double test_accuracy = 0.0;
};

struct VariantSummary {
    std::string variant;
    double mean = 0.0;
    double stdev = 0.0; // sample standard deviation (n-1)
};

inline std::pair<double, double> mean_and_sample_std(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var)};
}

inline const std::vector<std::string>& benchmark_variants() {
    static const std::vector<std::string> variants = {"none",        "no-hnp",      "no-fr",
                                                      "pipeline-fs", "pipeline-sf", "full"};
    return variants;
}

// Per-run seed streams, shared between benchmark and its tests: one run seed
// fans out into the injection, denoising and classifier seeds.
inline std::uint64_t benchmark_noise_seed(std::uint64_t run_seed) { return derive_seed(run_seed, "bench-noise"); }
inline std::uint64_t benchmark_denoise_seed(std::uint64_t run_seed) { return derive_seed(run_seed, "bench-denoise"); }
inline std::uint64_t benchmark_classifier_seed(std::uint64_t run_seed) { return derive_seed(run_seed, "bench-cls"); }

struct BenchmarkResult {
    std::vector<BenchmarkRow> rows;            // variant-major, seed-minor
    std::vector<VariantSummary> summaries;     // test accuracy per variant
};

// inject -> denoise variant (or none) -> classify, for every run seed and
// every variant. Rows come out in a fixed order regardless of thread count.
inline BenchmarkResult benchmark(const Graph& clean, const NoiseSpec& noise, const DenoiseConfig& denoise,
                                 const ClassifierConfig& cls, int threads = 1,
                                 const std::vector<std::string>& variants = benchmark_variants()) {
    cls.validate();
    denoise.validate();
    const std::size_t runs = variants.size() * cls.seeds.size();

    BenchmarkResult result;
    result.rows.resize(runs);

    auto run_one = [&](std::size_t task) {
        const std::string& variant = variants[task / cls.seeds.size()];
        const std::uint64_t run_seed = cls.seeds[task % cls.seeds.size()];

        NoiseSpec run_noise = noise;
        run_noise.seed = benchmark_noise_seed(run_seed);
        Graph noisy = inject_noise(clean, run_noise).first;

        Graph evaluated = std::move(noisy);
        if (variant != "none") {
            DenoiseConfig run_cfg = denoise;
            run_cfg.ablation = ablation_from_name(variant);
            run_cfg.seed = benchmark_denoise_seed(run_seed);
            evaluated = ugd_run(evaluated, run_cfg).graph;
        }

        const TrainedClassifier model =
            train_classifier(evaluated, cls, benchmark_classifier_seed(run_seed));
        result.rows[task] = {variant, run_seed, model.best_val_accuracy,
                             accuracy(model, evaluated, Split::test)};
    };

    if (threads <= 1) {
        for (std::size_t task = 0; task < runs; ++task) run_one(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min<int>(threads, static_cast<int>(runs));
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t task = next.fetch_add(1);
                    if (task >= runs) return;
                    run_one(task);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& variant : variants) {
        std::vector<double> accs;
        for (const auto& row : result.rows)
            if (row.variant == variant) accs.push_back(row.test_accuracy);
        const auto [mean, stdev] = mean_and_sample_std(accs);
        result.summaries.push_back({variant, mean, stdev});
    }
    return result;
}

} // namespace ugd
