#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "ugd/config_io.hpp"
#include "ugd/io.hpp"
#include "ugd/manifest.hpp"
#include "ugd/noise.hpp"

using namespace ugd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ugd_test_" + std::to_string(Rng(std::random_device{}()).next_u64()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("feature binary format round-trips float32 payloads exactly") {
    DenseMatrix x(3, 2);
    Rng rng(5);
    for (double& v : x.data()) v = static_cast<float>(rng.normal()); // pre-quantize to f32
    const std::string bytes = encode_features(x);
    CHECK(bytes.substr(0, 4) == "UGDF");
    const DenseMatrix back = decode_features(bytes, "test");
    CHECK(back == x);
}

TEST_CASE("feature decoder rejects corrupt payloads") {
    DenseMatrix x(2, 2, 1.0);
    std::string bytes = encode_features(x);
    CHECK_THROWS_AS(decode_features(bytes.substr(0, bytes.size() - 1), "t"), IoError);
    std::string wrong_magic = bytes;
    wrong_magic[0] = 'X';
    CHECK_THROWS_AS(decode_features(wrong_magic, "t"), IoError);
}

TEST_CASE("graph directory save/load round trip") {
    TempDir tmp;
    SbmParams p;
    p.n = 30;
    p.k = 3;
    p.p_in = 0.4;
    p.p_out = 0.02;
    p.dim = 4;
    p.seed = 77;
    Graph g = generate_sbm(p);
    // re-quantize features so the round trip is exact
    DenseMatrix quantized = g.features();
    for (double& v : quantized.data()) v = static_cast<float>(v);
    g = g.with_features(quantized);

    save_graph_dir(tmp.path / "g", g);
    const Graph back = load_graph_dir(tmp.path / "g");
    CHECK(back.edges() == g.edges());
    CHECK(back.features() == g.features());
    CHECK(back.labels() == g.labels());
    CHECK(back.masks() == g.masks());
}

TEST_CASE("loading a directory without required files fails") {
    TempDir tmp;
    CHECK_THROWS_AS(load_graph_dir(tmp.path / "missing"), IoError);
}

TEST_CASE("edges file parsing reports malformed lines") {
    CHECK_THROWS_AS(decode_edges("0\tx\n", "bad.edges"), IoError);
    const auto edges = decode_edges("0\t1\n2\t3\n", "ok.edges");
    REQUIRE(edges.size() == 2);
    CHECK(edges[1] == EdgePair{2, 3});
}

TEST_CASE("mask parsing accepts only the four split names") {
    CHECK(decode_masks("train\nval\ntest\nnone\n", "m") ==
          std::vector<Split>{Split::train, Split::val, Split::test, Split::none});
    CHECK_THROWS_AS(decode_masks("holdout\n", "m"), IoError);
}

TEST_CASE("noise spec json round trip and strictness") {
    NoiseSpec spec;
    spec.feature_ratio = 0.4;
    spec.structure_ratio = 0.15;
    spec.gaussian_sigma = 0.7;
    spec.seed = 42;
    const NoiseSpec back = noise_spec_from_json(to_json(spec));
    CHECK(back.feature_ratio == spec.feature_ratio);
    CHECK(back.structure_ratio == spec.structure_ratio);
    CHECK(back.gaussian_sigma == spec.gaussian_sigma);
    CHECK(back.seed == spec.seed);

    json j = to_json(spec);
    j["featur_ratio"] = 0.1; // typo must be rejected
    CHECK_THROWS_AS(noise_spec_from_json(j), ValidationError);
}

TEST_CASE("denoise config json: defaults, round trip, warm-up tracking") {
    SUBCASE("empty object yields the documented defaults") {
        const DenoiseConfig cfg = denoise_config_from_json(json::object());
        CHECK(cfg.theta_schedule.main_theta == 0.1);
        CHECK(cfg.theta_schedule.warmup_theta == 0.0);
        CHECK(cfg.theta_schedule.warmup_iters == 1);
        CHECK(cfg.fd.beta == 0.5);
        CHECK(cfg.fd.gamma == 1e-3);
        CHECK(cfg.fd.lr == 1e-3);
        CHECK(cfg.fd.epochs_per_step == 200);
        CHECK(cfg.epsilon == 2);
        CHECK(cfg.max_iters == 10);
        CHECK(cfg.ablation == Ablation::full);
    }
    SUBCASE("main_theta alone moves the warm-up default with it") {
        const DenoiseConfig cfg =
            denoise_config_from_json(json{{"theta_schedule", {{"main_theta", 0.35}}}});
        CHECK(cfg.theta_schedule.main_theta == 0.35);
        CHECK(cfg.theta_schedule.warmup_theta == doctest::Approx(0.25));
    }
    SUBCASE("full round trip") {
        DenoiseConfig cfg;
        cfg.theta_schedule = {0.05, 0.3, 2};
        cfg.fd.beta = 0.0;
        cfg.fd.gamma = 5e-4;
        cfg.epsilon = 10;
        cfg.ablation = Ablation::pipeline_sf;
        cfg.seed = 7;
        const DenoiseConfig back = denoise_config_from_json(to_json(cfg));
        CHECK(back.theta_schedule.warmup_theta == cfg.theta_schedule.warmup_theta);
        CHECK(back.theta_schedule.main_theta == cfg.theta_schedule.main_theta);
        CHECK(back.fd.beta == cfg.fd.beta);
        CHECK(back.epsilon == cfg.epsilon);
        CHECK(back.ablation == cfg.ablation);
        CHECK(back.seed == cfg.seed);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS(denoise_config_from_json(json{{"thetaa", 1.0}}), ValidationError);
    }
}

TEST_CASE("ledger json round trip") {
    Graph g = oracle::random_graph(12, 3, 0.3, 3);
    NoiseSpec spec;
    spec.feature_ratio = 0.25;
    spec.structure_ratio = 0.2;
    spec.structure_mode = StructureNoiseMode::uniform_random;
    spec.seed = 4;
    auto [noisy, ledger] = inject_noise(g, spec);
    const NoiseLedger back = ledger_from_json(to_json(ledger));
    CHECK(back.corrupted_nodes == ledger.corrupted_nodes);
    CHECK(back.injected_edges == ledger.injected_edges);
    CHECK(back.replacement_rows == ledger.replacement_rows);
    const Graph replayed = replay_ledger(g, back);
    CHECK(replayed.features() == noisy.features());
    CHECK(replayed.edges() == noisy.edges());
}

TEST_CASE("run report json round trip") {
    RunReport report;
    report.ablation = "full";
    report.initial_edges = 100;
    report.final_edges = 90;
    report.converged = true;
    report.reason = "edge-set change 1 <= epsilon 2";
    report.iterations.push_back({1, 95, 5, 0.5, 2.0, 0.502, 12.5});
    report.iterations.push_back({2, 90, 5, 0.4, 1.5, 0.4015, 11.0});
    const RunReport back = report_from_json(to_json(report));
    CHECK(back.ablation == report.ablation);
    CHECK(back.final_edges == report.final_edges);
    REQUIRE(back.iterations.size() == 2);
    CHECK(back.iterations[1].edges == 90);
    CHECK(back.total_removed() == 10);
}

TEST_CASE("json hash is insensitive to field insertion order") {
    json a;
    a["alpha"] = 1;
    a["beta"] = 2;
    json b;
    b["beta"] = 2;
    b["alpha"] = 1;
    CHECK(json_hash(a) == json_hash(b));
    json c = a;
    c["alpha"] = 3;
    CHECK(json_hash(a) != json_hash(c));
}

TEST_CASE("manifest lands atomically next to outputs") {
    TempDir tmp;
    PipelineManifest manifest;
    manifest.command = "test";
    manifest.config_hash = "fnv1a:0";
    manifest.input_graph_hash = "-";
    manifest.outputs = {"a.txt"};
    write_manifest(tmp.path / "manifest.json", manifest);
    const json j = parse_json(read_file(tmp.path / "manifest.json"), "manifest");
    CHECK(j.at("command") == "test");
    CHECK(j.at("tool_version") == kToolVersion);
    CHECK(j.contains("created_utc"));
    CHECK(!fs::exists(tmp.path / "manifest.json.tmp"));
}

TEST_CASE("classifier config json round trip") {
    ClassifierConfig cfg;
    cfg.hidden = 24;
    cfg.epochs = 50;
    cfg.seeds = {3, 4};
    const ClassifierConfig back = classifier_config_from_json(to_json(cfg));
    CHECK(back.hidden == 24);
    CHECK(back.epochs == 50);
    CHECK(back.seeds == std::vector<std::uint64_t>{3, 4});
}
