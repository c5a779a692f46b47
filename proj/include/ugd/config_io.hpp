#pragma once

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <string>

#include "ugd/classifier.hpp"
#include "ugd/driver.hpp"
#include "ugd/errors.hpp"
#include "ugd/noise.hpp"

// JSON (de)serialization for configs, ledgers and reports. Parsing is
// lenient about missing fields (defaults apply) and strict about unknown
// keys, so config typos fail loudly.

namespace ugd {

using json = nlohmann::json;

namespace detail {

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where) {
    require(obj.is_object(), where + ": expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name) known = true;
        if (!known) throw ValidationError(where + ": unknown field '" + key + "'");
    }
}

template <typename T>
void read_field(const json& obj, const char* name, T& out) {
    if (obj.contains(name)) out = obj.at(name).get<T>();
}

} // namespace detail

// ---- noise ---------------------------------------------------------------

inline const char* feature_mode_name(FeatureNoiseMode m) {
    return m == FeatureNoiseMode::gaussian_replace ? "gaussian-replace" : "bernoulli-resample";
}

inline FeatureNoiseMode feature_mode_from_name(const std::string& name) {
    if (name == "gaussian-replace") return FeatureNoiseMode::gaussian_replace;
    if (name == "bernoulli-resample") return FeatureNoiseMode::bernoulli_resample;
    throw ValidationError("unknown feature noise mode '" + name + "'");
}

inline const char* structure_mode_name(StructureNoiseMode m) {
    return m == StructureNoiseMode::uniform_random ? "uniform-random" : "cross-class";
}

inline StructureNoiseMode structure_mode_from_name(const std::string& name) {
    if (name == "uniform-random") return StructureNoiseMode::uniform_random;
    if (name == "cross-class") return StructureNoiseMode::cross_class;
    throw ValidationError("unknown structure noise mode '" + name + "'");
}

inline json to_json(const NoiseSpec& spec) {
    json j{{"feature_ratio", spec.feature_ratio},
           {"feature_mode", feature_mode_name(spec.feature_mode)},
           {"structure_ratio", spec.structure_ratio},
           {"structure_mode", structure_mode_name(spec.structure_mode)},
           {"seed", spec.seed}};
    j["gaussian_sigma"] = spec.gaussian_sigma ? json(*spec.gaussian_sigma) : json(nullptr);
    return j;
}

inline NoiseSpec noise_spec_from_json(const json& j) {
    detail::check_keys(j,
                       {"feature_ratio", "feature_mode", "gaussian_sigma", "structure_ratio",
                        "structure_mode", "seed"},
                       "noise spec");
    NoiseSpec spec;
    detail::read_field(j, "feature_ratio", spec.feature_ratio);
    if (j.contains("feature_mode")) spec.feature_mode = feature_mode_from_name(j.at("feature_mode"));
    if (j.contains("gaussian_sigma") && !j.at("gaussian_sigma").is_null())
        spec.gaussian_sigma = j.at("gaussian_sigma").get<double>();
    detail::read_field(j, "structure_ratio", spec.structure_ratio);
    if (j.contains("structure_mode"))
        spec.structure_mode = structure_mode_from_name(j.at("structure_mode"));
    detail::read_field(j, "seed", spec.seed);
    spec.validate();
    return spec;
}

inline json to_json(const NoiseLedger& ledger) {
    json edges = json::array();
    for (const auto& e : ledger.injected_edges) edges.push_back(json::array({e.u, e.v}));
    json rows = json::array();
    for (int i = 0; i < ledger.replacement_rows.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < ledger.replacement_rows.cols(); ++j)
            row.push_back(ledger.replacement_rows(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"corrupted_nodes", ledger.corrupted_nodes},
                {"replacement_rows", std::move(rows)},
                {"injected_edges", std::move(edges)}};
}

inline NoiseLedger ledger_from_json(const json& j) {
    detail::check_keys(j, {"corrupted_nodes", "replacement_rows", "injected_edges"}, "ledger");
    NoiseLedger ledger;
    ledger.corrupted_nodes = j.at("corrupted_nodes").get<std::vector<NodeId>>();
    const json& rows = j.at("replacement_rows");
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.at(0).size());
    ledger.replacement_rows = DenseMatrix(r, c);
    for (int i = 0; i < r; ++i)
        for (int jj = 0; jj < c; ++jj) ledger.replacement_rows(i, jj) = rows.at(i).at(jj).get<double>();
    for (const auto& e : j.at("injected_edges"))
        ledger.injected_edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
    return ledger;
}

// ---- denoise -------------------------------------------------------------

inline json to_json(const DenoiseConfig& cfg) {
    return json{{"theta_schedule",
                 {{"warmup_theta", cfg.theta_schedule.warmup_theta},
                  {"main_theta", cfg.theta_schedule.main_theta},
                  {"warmup_iters", cfg.theta_schedule.warmup_iters}}},
                {"fd",
                 {{"beta", cfg.fd.beta},
                  {"gamma", cfg.fd.gamma},
                  {"lr", cfg.fd.lr},
                  {"epochs_per_step", cfg.fd.epochs_per_step},
                  {"hidden1", cfg.fd.hidden1},
                  {"hidden2", cfg.fd.hidden2},
                  {"warm_start", cfg.fd.warm_start}}},
                {"epsilon", cfg.epsilon},
                {"max_iters", cfg.max_iters},
                {"ablation", ablation_name(cfg.ablation)},
                {"sd_scores_original", cfg.sd_scores_original},
                {"seed", cfg.seed}};
}

inline DenoiseConfig denoise_config_from_json(const json& j) {
    detail::check_keys(
        j, {"theta_schedule", "fd", "epsilon", "max_iters", "ablation", "sd_scores_original", "seed"},
        "denoise config");
    DenoiseConfig cfg;
    if (j.contains("theta_schedule")) {
        const json& ts = j.at("theta_schedule");
        detail::check_keys(ts, {"warmup_theta", "main_theta", "warmup_iters"}, "theta_schedule");
        // when only main_theta is given, the warm-up default tracks it
        detail::read_field(ts, "main_theta", cfg.theta_schedule.main_theta);
        cfg.theta_schedule.warmup_theta = std::max(cfg.theta_schedule.main_theta - 0.1, -1.0);
        detail::read_field(ts, "warmup_theta", cfg.theta_schedule.warmup_theta);
        detail::read_field(ts, "warmup_iters", cfg.theta_schedule.warmup_iters);
    }
    if (j.contains("fd")) {
        const json& fd = j.at("fd");
        detail::check_keys(fd, {"beta", "gamma", "lr", "epochs_per_step", "hidden1", "hidden2", "warm_start"},
                           "fd config");
        detail::read_field(fd, "beta", cfg.fd.beta);
        detail::read_field(fd, "gamma", cfg.fd.gamma);
        detail::read_field(fd, "lr", cfg.fd.lr);
        detail::read_field(fd, "epochs_per_step", cfg.fd.epochs_per_step);
        detail::read_field(fd, "hidden1", cfg.fd.hidden1);
        detail::read_field(fd, "hidden2", cfg.fd.hidden2);
        detail::read_field(fd, "warm_start", cfg.fd.warm_start);
    }
    detail::read_field(j, "epsilon", cfg.epsilon);
    detail::read_field(j, "max_iters", cfg.max_iters);
    if (j.contains("ablation")) cfg.ablation = ablation_from_name(j.at("ablation"));
    detail::read_field(j, "sd_scores_original", cfg.sd_scores_original);
    detail::read_field(j, "seed", cfg.seed);
    cfg.validate();
    return cfg;
}

// ---- classifier ----------------------------------------------------------

inline json to_json(const ClassifierConfig& cfg) {
    return json{{"hidden", cfg.hidden},   {"lr", cfg.lr},
                {"weight_decay", cfg.weight_decay}, {"epochs", cfg.epochs},
                {"dropout", cfg.dropout}, {"seeds", cfg.seeds}};
}

inline ClassifierConfig classifier_config_from_json(const json& j) {
    detail::check_keys(j, {"hidden", "lr", "weight_decay", "epochs", "dropout", "seeds"},
                       "classifier config");
    ClassifierConfig cfg;
    detail::read_field(j, "hidden", cfg.hidden);
    detail::read_field(j, "lr", cfg.lr);
    detail::read_field(j, "weight_decay", cfg.weight_decay);
    detail::read_field(j, "epochs", cfg.epochs);
    detail::read_field(j, "dropout", cfg.dropout);
    detail::read_field(j, "seeds", cfg.seeds);
    cfg.validate();
    return cfg;
}

// ---- run report ----------------------------------------------------------

inline json to_json(const RunReport& report) {
    json iterations = json::array();
    for (const auto& it : report.iterations)
        iterations.push_back(json{{"iteration", it.iteration},
                                  {"edges", it.edges},
                                  {"removed", it.removed},
                                  {"recon_loss", it.recon_loss},
                                  {"smooth_loss", it.smooth_loss},
                                  {"total_loss", it.total_loss},
                                  {"wall_ms", it.wall_ms}});
    return json{{"ablation", report.ablation},
                {"initial_edges", report.initial_edges},
                {"final_edges", report.final_edges},
                {"iterations", std::move(iterations)},
                {"converged", report.converged},
                {"aborted", report.aborted},
                {"reason", report.reason}};
}

inline RunReport report_from_json(const json& j) {
    RunReport report;
    report.ablation = j.at("ablation").get<std::string>();
    report.initial_edges = j.at("initial_edges").get<std::int64_t>();
    report.final_edges = j.at("final_edges").get<std::int64_t>();
    report.converged = j.at("converged").get<bool>();
    report.aborted = j.at("aborted").get<bool>();
    report.reason = j.at("reason").get<std::string>();
    for (const auto& it : j.at("iterations")) {
        IterationRecord rec;
        rec.iteration = it.at("iteration").get<int>();
        rec.edges = it.at("edges").get<std::int64_t>();
        rec.removed = it.at("removed").get<std::int64_t>();
        rec.recon_loss = it.at("recon_loss").get<double>();
        rec.smooth_loss = it.at("smooth_loss").get<double>();
        rec.total_loss = it.at("total_loss").get<double>();
        rec.wall_ms = it.at("wall_ms").get<double>();
        report.iterations.push_back(rec);
    }
    return report;
}

inline json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(origin + ": " + e.what());
    }
}

} // namespace ugd
