#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/graph.hpp"

namespace ugd {

// On-disk graph layout, one directory per graph:
//   graph.edges    text, one "u<TAB>v" pair per line
//   graph.features binary, magic "UGDF", u32 version=1, u64 n, u64 d,
//                  then n*d little-endian f32, row-major
//   graph.labels   text, one class id per line (optional)
//   graph.masks    text, one of train/val/test/none per line (optional)

namespace detail {

inline void put_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f32_le(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32_le(out, bits);
}

inline std::uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

inline float get_f32_le(const unsigned char* p) {
    const std::uint32_t bits = get_u32_le(p);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

} // namespace detail

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string encode_edges(const std::vector<EdgePair>& edges) {
    std::string out;
    for (const auto& e : edges) {
        out += std::to_string(e.u);
        out += '\t';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

inline std::vector<EdgePair> decode_edges(const std::string& text, const std::string& origin) {
    std::vector<EdgePair> edges;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        long long u = 0;
        long long v = 0;
        if (!(fields >> u >> v))
            throw IoError(origin + ":" + std::to_string(line_no) + ": expected 'u<TAB>v'");
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    return edges;
}

inline std::string encode_features(const DenseMatrix& x) {
    std::string out;
    out.reserve(24 + x.size() * 4);
    out += "UGDF";
    detail::put_u32_le(out, 1);
    detail::put_u64_le(out, static_cast<std::uint64_t>(x.rows()));
    detail::put_u64_le(out, static_cast<std::uint64_t>(x.cols()));
    for (double v : x.data()) detail::put_f32_le(out, static_cast<float>(v));
    return out;
}

inline DenseMatrix decode_features(const std::string& bytes, const std::string& origin) {
    if (bytes.size() < 24 || bytes.compare(0, 4, "UGDF") != 0)
        throw IoError(origin + ": not a UGDF feature file");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint32_t version = detail::get_u32_le(p + 4);
    if (version != 1) throw IoError(origin + ": unsupported UGDF version " + std::to_string(version));
    const std::uint64_t n = detail::get_u64_le(p + 8);
    const std::uint64_t d = detail::get_u64_le(p + 16);
    if (bytes.size() != 24 + n * d * 4) throw IoError(origin + ": truncated UGDF payload");
    DenseMatrix x(static_cast<int>(n), static_cast<int>(d));
    for (std::size_t i = 0; i < n * d; ++i) x.data()[i] = detail::get_f32_le(p + 24 + i * 4);
    return x;
}

inline std::string encode_labels(const std::vector<NodeId>& labels) {
    std::string out;
    for (NodeId l : labels) {
        out += std::to_string(l);
        out += '\n';
    }
    return out;
}

inline std::vector<NodeId> decode_labels(const std::string& text, const std::string& origin) {
    std::vector<NodeId> labels;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            labels.push_back(static_cast<NodeId>(std::stol(line)));
        } catch (const std::exception&) {
            throw IoError(origin + ":" + std::to_string(line_no) + ": expected an integer label");
        }
    }
    return labels;
}

inline const char* split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        case Split::test: return "test";
        default: return "none";
    }
}

inline Split split_from_name(const std::string& name, const std::string& origin) {
    if (name == "train") return Split::train;
    if (name == "val") return Split::val;
    if (name == "test") return Split::test;
    if (name == "none") return Split::none;
    throw IoError(origin + ": unknown mask value '" + name + "'");
}

inline std::string encode_masks(const std::vector<Split>& masks) {
    std::string out;
    for (Split s : masks) {
        out += split_name(s);
        out += '\n';
    }
    return out;
}

inline std::vector<Split> decode_masks(const std::string& text, const std::string& origin) {
    std::vector<Split> masks;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        masks.push_back(split_from_name(line, origin + ":" + std::to_string(line_no)));
    }
    return masks;
}

inline void save_graph_dir(const std::filesystem::path& dir, const Graph& g) {
    std::filesystem::create_directories(dir);
    write_file(dir / "graph.edges", encode_edges(g.edges()));
    write_file(dir / "graph.features", encode_features(g.features()));
    if (g.has_labels()) write_file(dir / "graph.labels", encode_labels(g.labels()));
    if (g.has_masks()) write_file(dir / "graph.masks", encode_masks(g.masks()));
}

inline Graph load_graph_dir(const std::filesystem::path& dir) {
    const auto edges_path = dir / "graph.edges";
    const auto features_path = dir / "graph.features";
    if (!std::filesystem::exists(edges_path) || !std::filesystem::exists(features_path))
        throw IoError("graph directory " + dir.string() + " must contain graph.edges and graph.features");
    auto features = decode_features(read_file(features_path), features_path.string());
    auto edges = decode_edges(read_file(edges_path), edges_path.string());
    std::vector<NodeId> labels;
    std::vector<Split> masks;
    if (std::filesystem::exists(dir / "graph.labels"))
        labels = decode_labels(read_file(dir / "graph.labels"), (dir / "graph.labels").string());
    if (std::filesystem::exists(dir / "graph.masks"))
        masks = decode_masks(read_file(dir / "graph.masks"), (dir / "graph.masks").string());
    try {
        return build_graph(std::move(edges), std::move(features), std::move(labels), std::move(masks));
    } catch (const ValidationError& e) {
        throw IoError("invalid graph in " + dir.string() + ": " + e.what());
    }
}

} // namespace ugd
