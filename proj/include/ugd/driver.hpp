#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "ugd/autoencoder.hpp"
#include "ugd/errors.hpp"
#include "ugd/graph.hpp"
#include "ugd/rng.hpp"
#include "ugd/structure.hpp"

namespace ugd {

enum class Ablation { full, no_hnp, no_fr, pipeline_fs, pipeline_sf };

inline const char* ablation_name(Ablation a) {
    switch (a) {
        case Ablation::full: return "full";
        case Ablation::no_hnp: return "no-hnp";
        case Ablation::no_fr: return "no-fr";
        case Ablation::pipeline_fs: return "pipeline-fs";
        case Ablation::pipeline_sf: return "pipeline-sf";
    }
    return "full";
}

inline Ablation ablation_from_name(const std::string& name) {
    if (name == "full") return Ablation::full;
    if (name == "no-hnp") return Ablation::no_hnp;
    if (name == "no-fr") return Ablation::no_fr;
    if (name == "pipeline-fs") return Ablation::pipeline_fs;
    if (name == "pipeline-sf") return Ablation::pipeline_sf;
    throw ValidationError("unknown ablation variant '" + name + "'");
}

struct DenoiseConfig {
    ThresholdSchedule theta_schedule;
    FdConfig fd;
    std::int64_t epsilon = 2; // max edge-set change that still counts as converged
    int max_iters = 10;
    Ablation ablation = Ablation::full;
    // SD-steps score the latest denoised features by default; set to score
    // the raw input features in every iteration instead.
    bool sd_scores_original = false;
    std::uint64_t seed = 0;

    void validate() const {
        theta_schedule.validate();
        fd.validate();
        require(epsilon >= 0, "epsilon must be >= 0");
        require(max_iters >= 1, "max_iters must be >= 1");
    }
};

struct IterationRecord {
    int iteration = 0;       // 1-based
    std::int64_t edges = 0;  // |E^i| after the SD-step
    std::int64_t removed = 0;
    double recon_loss = 0.0;
    double smooth_loss = 0.0;
    double total_loss = 0.0;
    double wall_ms = 0.0;
};

struct RunReport {
    std::string ablation = "full";
    std::int64_t initial_edges = 0;
    std::int64_t final_edges = 0;
    std::vector<IterationRecord> iterations;
    bool converged = false;
    bool aborted = false;
    std::string reason;

    std::int64_t total_removed() const {
        std::int64_t sum = 0;
        for (const auto& it : iterations) sum += it.removed;
        return sum;
    }
};

struct DenoiseResult {
    Graph graph;
    RunReport report;
};

// Test/inspection hook: called after each iteration with the surviving edges.
using IterationObserver = std::function<void(int iteration, const std::vector<EdgePair>&)>;

namespace detail {

class WallClock {
public:
    WallClock() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

// Alternates the SD-step (edge filtering by min-symmetrized neighborhood
// proximity) and the FD-step (auto-encoder feature refit) until the edge-set
// change between iterations is <= epsilon or max_iters is hit. Iteration 1's
// SD-step scores the raw input features; later iterations score the latest
// denoised features. On a non-finite loss the run stops and the partial
// report is retained with `aborted` set.
inline DenoiseResult ugd_run(const Graph& g0, const DenoiseConfig& cfg,
                             const IterationObserver& observer = nullptr) {
    cfg.validate();
    const bool do_sd = cfg.ablation != Ablation::no_hnp;
    const bool do_fd = cfg.ablation != Ablation::no_fr;
    const bool single_pass = cfg.ablation == Ablation::pipeline_fs || cfg.ablation == Ablation::pipeline_sf;
    const bool fd_first = cfg.ablation == Ablation::pipeline_fs;
    const int max_iters = single_pass ? 1 : cfg.max_iters;

    Rng init_rng(derive_seed(cfg.seed, "autoencoder-init"));
    AutoEncoderParams params =
        AutoEncoderParams::init(g0.dim(), cfg.fd.hidden1, cfg.fd.hidden2, init_rng);

    DenoiseResult result{g0, {}};
    RunReport& report = result.report;
    report.ablation = ablation_name(cfg.ablation);
    report.initial_edges = g0.num_edges();
    report.final_edges = g0.num_edges();

    const DenseMatrix& x0 = g0.features();
    DenseMatrix scoring_features = x0; // what the next SD-step scores
    Graph current = g0;

    for (int iter = 1; iter <= max_iters; ++iter) {
        detail::WallClock clock;
        IterationRecord record;
        record.iteration = iter;
        const std::int64_t edges_before = current.num_edges();

        // single-pass variants have no warm-up phase: their one SD pass uses
        // the main threshold
        const double theta =
            single_pass ? cfg.theta_schedule.main_theta : cfg.theta_schedule.theta_at(iter);
        auto sd_step = [&]() {
            if (!do_sd) return;
            const EdgeWeightTable table = compute_edge_weights(current, scoring_features);
            std::vector<EdgePair> kept = filter_edges(current, table, theta);
            if (kept.size() != static_cast<std::size_t>(current.num_edges()))
                current = current.with_edges(std::move(kept));
        };
        auto fd_step = [&]() {
            if (!do_fd) return;
            if (!cfg.fd.warm_start && iter > 1) {
                Rng fresh(derive_seed(cfg.seed, "autoencoder-init-" + std::to_string(iter)));
                params = AutoEncoderParams::init(g0.dim(), cfg.fd.hidden1, cfg.fd.hidden2, fresh);
            }
            FdStepResult fd = fd_train_step(current, x0, params, cfg.fd);
            if (!cfg.sd_scores_original) scoring_features = fd.x_hat;
            current = current.with_features(std::move(fd.x_hat));
            if (!fd.loss_trace.empty()) {
                const FdObjective& last = fd.loss_trace.back();
                record.recon_loss = last.recon;
                record.smooth_loss = last.smooth;
                record.total_loss = last.total;
            }
        };

        try {
            if (fd_first) {
                fd_step();
                sd_step();
            } else {
                sd_step();
                fd_step();
            }
        } catch (const NumericError& e) {
            record.edges = current.num_edges();
            record.removed = edges_before - current.num_edges();
            record.wall_ms = clock.elapsed_ms();
            report.iterations.push_back(record);
            report.final_edges = current.num_edges();
            report.aborted = true;
            report.reason = std::string("numeric-abort: ") + e.what();
            result.graph = std::move(current);
            return result;
        }

        record.edges = current.num_edges();
        record.removed = edges_before - current.num_edges();
        record.wall_ms = clock.elapsed_ms();
        report.iterations.push_back(record);
        report.final_edges = current.num_edges();
        if (observer) observer(iter, current.edges());

        if (!do_sd) {
            // feature-denoising only: the edge set can never change, so one
            // pass is the whole run
            report.converged = true;
            report.reason = "feature-denoising only";
            break;
        }
        // a warm-up threshold below the main one removes little by design;
        // convergence only counts once the threshold has stabilized
        const bool theta_stable =
            cfg.theta_schedule.theta_at(iter + 1) == cfg.theta_schedule.theta_at(iter);
        if (!single_pass && theta_stable && record.removed <= cfg.epsilon) {
            report.converged = true;
            report.reason = "edge-set change " + std::to_string(record.removed) + " <= epsilon " +
                            std::to_string(cfg.epsilon);
            break;
        }
    }
    if (!report.converged && !report.aborted)
        report.reason = single_pass ? "single-pass variant" : "max_iters reached";

    if (report.final_edges == 0 && report.initial_edges > 0)
        std::cerr << "warning: threshold removed every edge; the graph is fully disconnected\n";

    result.graph = std::move(current);
    return result;
}

// Runs one of the reduced variants; cfg.ablation must not be `full`.
inline DenoiseResult run_ablation(const Graph& g0, const DenoiseConfig& cfg,
                                  const IterationObserver& observer = nullptr) {
    require(cfg.ablation != Ablation::full, "run_ablation requires a non-full variant");
    return ugd_run(g0, cfg, observer);
}

} // namespace ugd
