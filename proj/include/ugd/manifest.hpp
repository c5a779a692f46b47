#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include "ugd/io.hpp"
#include "ugd/rng.hpp"

namespace ugd {

inline constexpr const char* kToolVersion = "ugd 1.0.0";

// Stable across field ordering: nlohmann::json objects iterate sorted by key.
inline std::string json_hash(const nlohmann::json& j) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

inline std::string bytes_hash(const std::string& bytes) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string graph_hash(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a64(encode_edges(g.edges()), h);
    h = fnv1a64(encode_features(g.features()), h);
    if (g.has_labels()) h = fnv1a64(encode_labels(g.labels()), h);
    if (g.has_masks()) h = fnv1a64(encode_masks(g.masks()), h);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string graph_dir_hash(const std::filesystem::path& dir) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* name : {"graph.edges", "graph.features", "graph.labels", "graph.masks"}) {
        const auto path = dir / name;
        if (!std::filesystem::exists(path)) continue;
        const std::string bytes = read_file(path);
        h = fnv1a64(std::string_view(name), h);
        h = fnv1a64_bytes(bytes.data(), bytes.size(), h);
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Provenance record written next to every command's outputs. The timestamp
// is the single intentionally non-deterministic field.
struct PipelineManifest {
    std::string command;
    std::string config_hash;
    std::string input_graph_hash;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char stamp[32];
        std::tm utc{};
        gmtime_r(&tt, &utc);
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
        return nlohmann::json{{"tool_version", kToolVersion}, {"command", command},
                              {"config_hash", config_hash},   {"input_graph_hash", input_graph_hash},
                              {"created_utc", stamp},         {"outputs", outputs}};
    }
};

// Atomic write: temp file in the same directory, then rename over the target.
inline void write_manifest(const std::filesystem::path& target, const PipelineManifest& manifest) {
    const auto tmp = target.parent_path() / (target.filename().string() + ".tmp");
    write_file(tmp, manifest.to_json().dump(2) + "\n");
    std::filesystem::rename(tmp, target);
}

} // namespace ugd
