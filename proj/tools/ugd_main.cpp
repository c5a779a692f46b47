// ugd: command-line front end for the unified graph denoising library.
//
// Exit codes: 0 success, 2 bad flags or invalid config, 3 I/O error,
// 4 numerical abort. Errors print a single machine-parsable line to stderr.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ugd/ugd.hpp"

namespace fs = std::filesystem;
using ugd::json;

namespace {

int env_threads() {
    const char* raw = std::getenv("UGD_THREADS");
    if (!raw) return 1;
    const int n = std::atoi(raw);
    return n >= 1 ? n : 1;
}

std::string format_double(double v, const char* fmt = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ugd::ValidationError("cannot parse number '" + item + "' in list '" + text + "'");
        }
    }
    if (out.empty()) throw ugd::ValidationError("empty value list: '" + text + "'");
    return out;
}

json load_json_file(const std::string& path) {
    return ugd::parse_json(ugd::read_file(path), path);
}

void write_results_csv(const fs::path& path, const std::vector<ugd::BenchmarkRow>& rows) {
    std::string csv = "variant,seed,val_acc,test_acc\n";
    for (const auto& row : rows) {
        csv += row.variant;
        csv += ',';
        csv += std::to_string(row.seed);
        csv += ',';
        csv += format_double(row.val_accuracy, "%.6f");
        csv += ',';
        csv += format_double(row.test_accuracy, "%.6f");
        csv += '\n';
    }
    ugd::write_file(path, csv);
}

void print_summaries(const std::vector<ugd::VariantSummary>& summaries) {
    std::printf("%-12s %8s %8s\n", "variant", "mean", "std");
    for (const auto& s : summaries)
        std::printf("%-12s %8.4f %8.4f\n", s.variant.c_str(), s.mean, s.stdev);
}

// ---- per-subcommand option bags -------------------------------------------

struct GenSbmOpts {
    ugd::SbmParams params;
    std::string out;
};

struct InjectOpts {
    std::string graph, out;
    double feature_ratio = 0.5;
    double structure_ratio = 0.1;
    std::string structure_mode = "cross-class";
    std::string feature_mode = "gaussian-replace";
    double sigma = 0.0; // 0 means auto (per-dimension empirical std)
    std::uint64_t seed = 0;

    ugd::NoiseSpec spec() const {
        ugd::NoiseSpec s;
        s.feature_ratio = feature_ratio;
        s.structure_ratio = structure_ratio;
        s.feature_mode = ugd::feature_mode_from_name(feature_mode);
        s.structure_mode = ugd::structure_mode_from_name(structure_mode);
        if (sigma > 0.0) s.gaussian_sigma = sigma;
        s.seed = seed;
        return s;
    }
};

struct WeightsOpts {
    std::string graph;
    std::string out = "weights.tsv";
};

struct FdOpts {
    std::string graph;
    std::string out = "features.bin";
    ugd::FdConfig cfg;
    std::uint64_t seed = 0;
};

struct DenoiseOpts {
    std::string graph, out, config;
    std::string variant = "full"; // ablate only
    double theta = 0.0, warmup_theta = 0.0;
    int warmup_iters = 0;
    double beta = 0.0, gamma = 0.0, lr = 0.0;
    int epochs = 0, max_iters = 0;
    std::int64_t epsilon = 0;
    std::uint64_t seed = 0;
};

struct EvalOpts {
    std::string graph, cls_config;
    std::string out = ".";
    int seeds = 0;
};

struct BenchOpts {
    std::string graph, preset, out = ".";
    std::string config, cls_config, noise_config;
    std::string sweep_feature_ratio, sweep_theta;
    int seeds = 0;
    std::uint64_t seed = 42;
};

// ---- config assembly -------------------------------------------------------

ugd::DenoiseConfig assemble_denoise_config(const DenoiseOpts& opts, const CLI::App* cmd) {
    ugd::DenoiseConfig cfg;
    bool file_sets_warmup = false;
    if (!opts.config.empty()) {
        const json j = load_json_file(opts.config);
        cfg = ugd::denoise_config_from_json(j);
        file_sets_warmup = j.contains("theta_schedule") && j.at("theta_schedule").contains("warmup_theta");
    }
    if (cmd->count("--theta")) {
        cfg.theta_schedule.main_theta = opts.theta;
        if (!file_sets_warmup && !cmd->count("--warmup-theta"))
            cfg.theta_schedule.warmup_theta = std::max(opts.theta - 0.1, -1.0);
    }
    if (cmd->count("--warmup-theta")) cfg.theta_schedule.warmup_theta = opts.warmup_theta;
    if (cmd->count("--warmup-iters")) cfg.theta_schedule.warmup_iters = opts.warmup_iters;
    if (cmd->count("--beta")) cfg.fd.beta = opts.beta;
    if (cmd->count("--gamma")) cfg.fd.gamma = opts.gamma;
    if (cmd->count("--lr")) cfg.fd.lr = opts.lr;
    if (cmd->count("--epochs")) cfg.fd.epochs_per_step = opts.epochs;
    if (cmd->count("--epsilon")) cfg.epsilon = opts.epsilon;
    if (cmd->count("--max-iters")) cfg.max_iters = opts.max_iters;
    if (cmd->count("--seed")) cfg.seed = opts.seed;
    const CLI::Option* variant = cmd->get_option_no_throw("--variant");
    if (variant && variant->count()) cfg.ablation = ugd::ablation_from_name(opts.variant);
    cfg.validate();
    return cfg;
}

// ---- command runners -------------------------------------------------------

void run_gen_sbm(const GenSbmOpts& opts) {
    const ugd::Graph g = ugd::generate_sbm(opts.params);
    ugd::save_graph_dir(opts.out, g);
    ugd::PipelineManifest manifest;
    manifest.command = "gen-sbm";
    manifest.config_hash = ugd::json_hash(json{{"n", opts.params.n},
                                               {"k", opts.params.k},
                                               {"p_in", opts.params.p_in},
                                               {"p_out", opts.params.p_out},
                                               {"sep", opts.params.center_separation},
                                               {"dim", opts.params.dim},
                                               {"noise_std", opts.params.feature_noise_std},
                                               {"seed", opts.params.seed}});
    manifest.input_graph_hash = "-";
    manifest.outputs = {"graph.edges", "graph.features", "graph.labels", "graph.masks"};
    ugd::write_manifest(fs::path(opts.out) / "manifest.json", manifest);
    std::printf("generated sbm: n=%d k=%d |E|=%lld -> %s\n", opts.params.n, opts.params.k,
                static_cast<long long>(g.num_edges()), opts.out.c_str());
}

void run_inject(const InjectOpts& opts) {
    const ugd::Graph g = ugd::load_graph_dir(opts.graph);
    const ugd::NoiseSpec spec = opts.spec();
    auto [noisy, ledger] = ugd::inject_noise(g, spec);
    ugd::save_graph_dir(opts.out, noisy);
    ugd::write_file(fs::path(opts.out) / "ledger.json", ugd::to_json(ledger).dump(2) + "\n");

    ugd::PipelineManifest manifest;
    manifest.command = "inject";
    manifest.config_hash = ugd::json_hash(ugd::to_json(spec));
    manifest.input_graph_hash = ugd::graph_dir_hash(opts.graph);
    manifest.outputs = {"graph.edges", "graph.features", "ledger.json"};
    if (noisy.has_labels()) manifest.outputs.push_back("graph.labels");
    if (noisy.has_masks()) manifest.outputs.push_back("graph.masks");
    ugd::write_manifest(fs::path(opts.out) / "manifest.json", manifest);
    std::printf("injected noise: %zu corrupted rows, %zu injected edges -> %s\n",
                ledger.corrupted_nodes.size(), ledger.injected_edges.size(), opts.out.c_str());
}

void run_weights(const WeightsOpts& opts) {
    const ugd::Graph g = ugd::load_graph_dir(opts.graph);
    const ugd::EdgeWeightTable table = ugd::compute_edge_weights(g, g.features());
    std::string tsv;
    for (const auto& [edge, weight] : table.weights) {
        tsv += std::to_string(edge.u);
        tsv += '\t';
        tsv += std::to_string(edge.v);
        tsv += '\t';
        tsv += format_double(weight);
        tsv += '\n';
    }
    ugd::write_file(opts.out, tsv);

    ugd::PipelineManifest manifest;
    manifest.command = "weights";
    manifest.config_hash = "-";
    manifest.input_graph_hash = ugd::graph_dir_hash(opts.graph);
    manifest.outputs = {fs::path(opts.out).filename().string()};
    ugd::write_manifest(opts.out + ".manifest.json", manifest);
    std::printf("wrote %zu edge weights -> %s\n", table.weights.size(), opts.out.c_str());
}

void run_fd(const FdOpts& opts) {
    const ugd::Graph g = ugd::load_graph_dir(opts.graph);
    opts.cfg.validate();
    ugd::Rng rng(ugd::derive_seed(opts.seed, "autoencoder-init"));
    ugd::AutoEncoderParams params =
        ugd::AutoEncoderParams::init(g.dim(), opts.cfg.hidden1, opts.cfg.hidden2, rng);
    const ugd::FdStepResult result = ugd::fd_train_step(g, g.features(), params, opts.cfg);
    ugd::write_file(opts.out, ugd::encode_features(result.x_hat));

    ugd::PipelineManifest manifest;
    manifest.command = "fd";
    manifest.config_hash = ugd::json_hash(json{{"beta", opts.cfg.beta},
                                               {"gamma", opts.cfg.gamma},
                                               {"lr", opts.cfg.lr},
                                               {"epochs_per_step", opts.cfg.epochs_per_step},
                                               {"hidden1", opts.cfg.hidden1},
                                               {"hidden2", opts.cfg.hidden2},
                                               {"seed", opts.seed}});
    manifest.input_graph_hash = ugd::graph_dir_hash(opts.graph);
    manifest.outputs = {fs::path(opts.out).filename().string()};
    ugd::write_manifest(opts.out + ".manifest.json", manifest);
    const ugd::FdObjective& last = result.loss_trace.back();
    std::printf("fd: %d epochs, recon=%.6f smooth=%.6f total=%.6f -> %s\n", opts.cfg.epochs_per_step,
                last.recon, last.smooth, last.total, opts.out.c_str());
}

void run_denoise(const DenoiseOpts& opts, const CLI::App* cmd, const char* command_name) {
    const ugd::Graph g = ugd::load_graph_dir(opts.graph);
    const ugd::DenoiseConfig cfg = assemble_denoise_config(opts, cmd);
    const ugd::DenoiseResult result = ugd::ugd_run(g, cfg);

    ugd::save_graph_dir(opts.out, result.graph);
    ugd::write_file(fs::path(opts.out) / "report.json", ugd::to_json(result.report).dump(2) + "\n");

    ugd::PipelineManifest manifest;
    manifest.command = command_name;
    manifest.config_hash = ugd::json_hash(ugd::to_json(cfg));
    manifest.input_graph_hash = ugd::graph_dir_hash(opts.graph);
    manifest.outputs = {"graph.edges", "graph.features", "report.json"};
    if (result.graph.has_labels()) manifest.outputs.push_back("graph.labels");
    if (result.graph.has_masks()) manifest.outputs.push_back("graph.masks");
    ugd::write_manifest(fs::path(opts.out) / "manifest.json", manifest);

    if (result.report.aborted) throw ugd::NumericError(result.report.reason);
    std::printf("%s [%s]: %lld -> %lld edges in %zu iterations (%s) -> %s\n", command_name,
                result.report.ablation.c_str(), static_cast<long long>(result.report.initial_edges),
                static_cast<long long>(result.report.final_edges), result.report.iterations.size(),
                result.report.reason.c_str(), opts.out.c_str());
}

void run_eval(const EvalOpts& opts, const CLI::App* cmd) {
    const ugd::Graph g = ugd::load_graph_dir(opts.graph);
    ugd::ClassifierConfig cfg;
    if (!opts.cls_config.empty()) cfg = ugd::classifier_config_from_json(load_json_file(opts.cls_config));
    if (cmd->count("--seeds")) {
        ugd::require(opts.seeds >= 1, "--seeds must be >= 1");
        cfg.seeds.clear();
        for (int s = 1; s <= opts.seeds; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    cfg.validate();

    std::vector<ugd::BenchmarkRow> rows;
    std::vector<double> test_accs;
    for (const std::uint64_t seed : cfg.seeds) {
        const ugd::TrainedClassifier model = ugd::train_classifier(g, cfg, seed);
        const double test_acc = ugd::accuracy(model, g, ugd::Split::test);
        rows.push_back({"input", seed, model.best_val_accuracy, test_acc});
        test_accs.push_back(test_acc);
    }
    fs::create_directories(opts.out);
    write_results_csv(fs::path(opts.out) / "results.csv", rows);

    ugd::PipelineManifest manifest;
    manifest.command = "eval";
    manifest.config_hash = ugd::json_hash(ugd::to_json(cfg));
    manifest.input_graph_hash = ugd::graph_dir_hash(opts.graph);
    manifest.outputs = {"results.csv"};
    ugd::write_manifest(fs::path(opts.out) / "manifest.json", manifest);

    std::printf("%-6s %8s %8s\n", "seed", "val", "test");
    for (const auto& row : rows)
        std::printf("%-6llu %8.4f %8.4f\n", static_cast<unsigned long long>(row.seed), row.val_accuracy,
                    row.test_accuracy);
    const auto [mean, stdev] = ugd::mean_and_sample_std(test_accs);
    std::printf("test accuracy: %.4f +- %.4f over %zu seeds\n", mean, stdev, cfg.seeds.size());
}

void run_bench(const BenchOpts& opts, const CLI::App* cmd) {
    ugd::require(!opts.preset.empty() || !opts.graph.empty(), "bench needs --preset or --graph");

    ugd::Graph clean;
    ugd::NoiseSpec noise;
    ugd::DenoiseConfig denoise;
    ugd::ClassifierConfig cls;

    if (!opts.preset.empty()) {
        ugd::require(opts.preset == "paper-synthetic", "unknown preset '" + opts.preset + "'");
        clean = ugd::generate_sbm(ugd::paper_synthetic_sbm(opts.seed));
        noise = ugd::paper_synthetic_noise();
        denoise = ugd::paper_synthetic_denoise();
    } else {
        clean = ugd::load_graph_dir(opts.graph);
        noise.feature_ratio = 0.5;
        noise.structure_ratio = 0.1;
    }
    if (!opts.noise_config.empty()) noise = ugd::noise_spec_from_json(load_json_file(opts.noise_config));
    if (!opts.config.empty()) denoise = ugd::denoise_config_from_json(load_json_file(opts.config));
    if (!opts.cls_config.empty()) cls = ugd::classifier_config_from_json(load_json_file(opts.cls_config));
    if (cmd->count("--seeds")) {
        ugd::require(opts.seeds >= 1, "--seeds must be >= 1");
        cls.seeds.clear();
        for (int s = 1; s <= opts.seeds; ++s) cls.seeds.push_back(static_cast<std::uint64_t>(s));
    }

    const int threads = env_threads();
    fs::create_directories(opts.out);
    std::vector<std::string> outputs;

    const ugd::BenchmarkResult result = ugd::benchmark(clean, noise, denoise, cls, threads);
    write_results_csv(fs::path(opts.out) / "results.csv", result.rows);
    outputs.push_back("results.csv");
    print_summaries(result.summaries);

    if (!opts.sweep_feature_ratio.empty()) {
        std::string csv = "feature_ratio,variant,seed,val_acc,test_acc\n";
        for (const double ratio : parse_double_list(opts.sweep_feature_ratio)) {
            ugd::NoiseSpec swept = noise;
            swept.feature_ratio = ratio;
            const auto sweep = ugd::benchmark(clean, swept, denoise, cls, threads, {"none", "full"});
            for (const auto& row : sweep.rows)
                csv += format_double(ratio, "%.4f") + "," + row.variant + "," + std::to_string(row.seed) +
                       "," + format_double(row.val_accuracy, "%.6f") + "," +
                       format_double(row.test_accuracy, "%.6f") + "\n";
        }
        ugd::write_file(fs::path(opts.out) / "feature_sweep.csv", csv);
        outputs.push_back("feature_sweep.csv");
    }
    if (!opts.sweep_theta.empty()) {
        std::string csv = "theta,variant,seed,val_acc,test_acc\n";
        for (const double theta : parse_double_list(opts.sweep_theta)) {
            ugd::DenoiseConfig swept = denoise;
            swept.theta_schedule.main_theta = theta;
            swept.theta_schedule.warmup_theta = theta - 0.1;
            const auto sweep = ugd::benchmark(clean, noise, swept, cls, threads, {"full"});
            for (const auto& row : sweep.rows)
                csv += format_double(theta, "%.4f") + "," + row.variant + "," + std::to_string(row.seed) +
                       "," + format_double(row.val_accuracy, "%.6f") + "," +
                       format_double(row.test_accuracy, "%.6f") + "\n";
        }
        ugd::write_file(fs::path(opts.out) / "theta_sweep.csv", csv);
        outputs.push_back("theta_sweep.csv");
    }

    ugd::PipelineManifest manifest;
    manifest.command = "bench";
    manifest.config_hash = ugd::json_hash(json{{"noise", ugd::to_json(noise)},
                                               {"denoise", ugd::to_json(denoise)},
                                               {"classifier", ugd::to_json(cls)},
                                               {"preset", opts.preset}});
    manifest.input_graph_hash = ugd::graph_hash(clean);
    manifest.outputs = outputs;
    ugd::write_manifest(fs::path(opts.out) / "manifest.json", manifest);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unified graph denoising: edge filtering by neighborhood proximity plus "
                 "auto-encoder feature reconstruction"};
    app.require_subcommand(1);

    GenSbmOpts gen_opts;
    auto* gen = app.add_subcommand("gen-sbm", "generate a stochastic block model benchmark graph");
    gen->add_option("--n", gen_opts.params.n, "node count")->capture_default_str();
    gen->add_option("--k", gen_opts.params.k, "number of blocks/classes")->capture_default_str();
    gen->add_option("--p-in", gen_opts.params.p_in, "intra-block edge probability")->capture_default_str();
    gen->add_option("--p-out", gen_opts.params.p_out, "inter-block edge probability")->capture_default_str();
    gen->add_option("--sep", gen_opts.params.center_separation, "pairwise distance between class feature centers")
        ->capture_default_str();
    gen->add_option("--dim", gen_opts.params.dim, "feature dimensionality (>= k)")->capture_default_str();
    gen->add_option("--noise-std", gen_opts.params.feature_noise_std, "per-dimension feature noise std")
        ->capture_default_str();
    gen->add_option("--seed", gen_opts.params.seed, "random seed")->capture_default_str();
    gen->add_option("--out", gen_opts.out, "output graph directory")->required();

    InjectOpts inject_opts;
    auto* inject = app.add_subcommand("inject", "inject feature and structure noise into a graph");
    inject->add_option("--graph", inject_opts.graph, "input graph directory")->required();
    inject->add_option("--feature-ratio", inject_opts.feature_ratio, "fraction of nodes with replaced features")
        ->capture_default_str();
    inject->add_option("--structure-ratio", inject_opts.structure_ratio, "added edges as fraction of |E|")
        ->capture_default_str();
    inject->add_option("--mode", inject_opts.structure_mode, "structure mode: cross-class|uniform-random")
        ->capture_default_str();
    inject
        ->add_option("--feature-mode", inject_opts.feature_mode,
                     "feature mode: gaussian-replace|bernoulli-resample")
        ->capture_default_str();
    inject->add_option("--sigma", inject_opts.sigma,
                       "gaussian replacement std (0 = per-dimension empirical std)")
        ->capture_default_str();
    inject->add_option("--seed", inject_opts.seed, "random seed")->capture_default_str();
    inject->add_option("--out", inject_opts.out, "output graph directory")->required();

    WeightsOpts weights_opts;
    auto* weights = app.add_subcommand("weights", "emit per-edge proximity weights as TSV");
    weights->add_option("--graph", weights_opts.graph, "input graph directory")->required();
    weights->add_option("--out", weights_opts.out, "output TSV path")->capture_default_str();

    FdOpts fd_opts;
    auto* fd = app.add_subcommand("fd", "one feature-denoising pass (auto-encoder reconstruction)");
    fd->add_option("--graph", fd_opts.graph, "input graph directory")->required();
    fd->add_option("--beta", fd_opts.cfg.beta, "residual blend weight")->capture_default_str();
    fd->add_option("--gamma", fd_opts.cfg.gamma, "smoothness weight")->capture_default_str();
    fd->add_option("--lr", fd_opts.cfg.lr, "learning rate")->capture_default_str();
    fd->add_option("--epochs", fd_opts.cfg.epochs_per_step, "training epochs")->capture_default_str();
    fd->add_option("--hidden1", fd_opts.cfg.hidden1, "first hidden width")->capture_default_str();
    fd->add_option("--hidden2", fd_opts.cfg.hidden2, "bottleneck width")->capture_default_str();
    fd->add_option("--seed", fd_opts.seed, "random seed")->capture_default_str();
    fd->add_option("--out", fd_opts.out, "output feature file (UGDF binary)")->capture_default_str();

    auto add_denoise_flags = [](CLI::App* cmd, DenoiseOpts& opts) {
        cmd->add_option("--graph", opts.graph, "input graph directory")->required();
        cmd->add_option("--config", opts.config, "JSON config (flags override file values)");
        cmd->add_option("--theta", opts.theta, "main edge-filtering threshold (default 0.1)");
        cmd->add_option("--warmup-theta", opts.warmup_theta,
                        "threshold for warm-up iterations (default theta - 0.1)");
        cmd->add_option("--warmup-iters", opts.warmup_iters, "number of warm-up iterations (default 1)");
        cmd->add_option("--beta", opts.beta, "residual blend weight (default 0.5)");
        cmd->add_option("--gamma", opts.gamma, "smoothness weight (default 1e-3)");
        cmd->add_option("--lr", opts.lr, "feature-denoiser learning rate (default 1e-3)");
        cmd->add_option("--epochs", opts.epochs, "feature-denoiser epochs per iteration (default 200)");
        cmd->add_option("--epsilon", opts.epsilon, "stop number: max edge change at convergence (default 2)");
        cmd->add_option("--max-iters", opts.max_iters, "iteration cap (default 10)");
        cmd->add_option("--seed", opts.seed, "random seed (default 0)");
        cmd->add_option("--out", opts.out, "output graph directory")->required();
    };

    DenoiseOpts denoise_opts;
    auto* denoise = app.add_subcommand("denoise", "full iterative denoising (alternating SD and FD steps)");
    add_denoise_flags(denoise, denoise_opts);

    DenoiseOpts ablate_opts;
    auto* ablate = app.add_subcommand("ablate", "run a reduced denoising variant");
    add_denoise_flags(ablate, ablate_opts);
    ablate->add_option("--variant", ablate_opts.variant, "no-hnp|no-fr|pipeline-fs|pipeline-sf")->required();

    EvalOpts eval_opts;
    auto* eval = app.add_subcommand("eval", "downstream node-classification evaluation (two-layer GCN)");
    eval->add_option("--graph", eval_opts.graph, "input graph directory (labels and masks required)")
        ->required();
    eval->add_option("--cls-config", eval_opts.cls_config, "classifier JSON config");
    eval->add_option("--seeds", eval_opts.seeds, "use seeds 1..N (default 5)");
    eval->add_option("--out", eval_opts.out, "output directory for results.csv")->capture_default_str();

    BenchOpts bench_opts;
    auto* bench = app.add_subcommand("bench", "noise -> denoise variants -> classify, over seeds");
    bench->add_option("--preset", bench_opts.preset, "benchmark preset: paper-synthetic");
    bench->add_option("--graph", bench_opts.graph, "clean input graph directory (alternative to --preset)");
    bench->add_option("--noise-config", bench_opts.noise_config,
                      "noise JSON config (default: 50% feature, 10% cross-class structure)");
    bench->add_option("--config", bench_opts.config, "denoise JSON config");
    bench->add_option("--cls-config", bench_opts.cls_config, "classifier JSON config");
    bench->add_option("--seeds", bench_opts.seeds, "use run seeds 1..N (default 5)");
    bench->add_option("--seed", bench_opts.seed, "preset graph generation seed")->capture_default_str();
    bench->add_option("--sweep-feature-ratio", bench_opts.sweep_feature_ratio,
                      "comma-separated feature-noise ratios; writes feature_sweep.csv");
    bench->add_option("--sweep-theta", bench_opts.sweep_theta,
                      "comma-separated thresholds; writes theta_sweep.csv");
    bench->add_option("--out", bench_opts.out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ugd: error: flags: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(gen)) run_gen_sbm(gen_opts);
        else if (app.got_subcommand(inject)) run_inject(inject_opts);
        else if (app.got_subcommand(weights)) run_weights(weights_opts);
        else if (app.got_subcommand(fd)) run_fd(fd_opts);
        else if (app.got_subcommand(denoise)) run_denoise(denoise_opts, denoise, "denoise");
        else if (app.got_subcommand(ablate)) run_denoise(ablate_opts, ablate, "ablate");
        else if (app.got_subcommand(eval)) run_eval(eval_opts, eval);
        else if (app.got_subcommand(bench)) run_bench(bench_opts, bench);
        return 0;
    } catch (const ugd::ValidationError& e) {
        std::cerr << "ugd: error: invalid-input: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "ugd: error: invalid-input: " << e.what() << "\n";
        return 2;
    } catch (const ugd::IoError& e) {
        std::cerr << "ugd: error: io: " << e.what() << "\n";
        return 3;
    } catch (const ugd::NumericError& e) {
        std::cerr << "ugd: error: numeric: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "ugd: error: io: " << e.what() << "\n";
        return 3;
    }
}
