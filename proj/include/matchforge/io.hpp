#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"

namespace matchforge {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
T parse_int(std::string_view tok, std::size_t line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        fail(ErrorKind::ParseError,
             "line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
    return value;
}

// Reads the next line that is neither blank nor a comment.
inline bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
    out << text;
    if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

} // namespace detail

// mg 1 <bip|gen> <node_count> <left_count> <edge_count>, then one "u v" line
// per edge with u < v in ascending order.
inline std::string graph_to_text(const Graph& g) {
    std::string out = "mg 1 ";
    out += g.is_bipartite() ? "bip " : "gen ";
    out += std::to_string(g.node_count()) + " " + std::to_string(g.left_count()) + " " +
           std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline Graph parse_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::next_data_line(in, line, line_no)) fail(ErrorKind::ParseError, "missing header");
    auto head = detail::split_ws(line);
    if (head.size() != 6 || head[0] != "mg" || head[1] != "1")
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad header");
    bool bip;
    if (head[2] == "bip")
        bip = true;
    else if (head[2] == "gen")
        bip = false;
    else
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": unknown graph kind");
    auto n = detail::parse_int<std::size_t>(head[3], line_no);
    auto left = detail::parse_int<std::size_t>(head[4], line_no);
    auto m = detail::parse_int<std::size_t>(head[5], line_no);
    if (left > n || (!bip && left != 0))
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad left_count");

    std::vector<Edge> edges;
    edges.reserve(m);
    while (detail::next_data_line(in, line, line_no)) {
        auto tok = detail::split_ws(line);
        if (tok.size() != 2)
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'u v'");
        edges.emplace_back(detail::parse_int<NodeId>(tok[0], line_no),
                           detail::parse_int<NodeId>(tok[1], line_no));
    }
    if (edges.size() != m)
        fail(ErrorKind::ParseError, "header announces " + std::to_string(m) + " edges, found " +
                                        std::to_string(edges.size()));
    return bip ? Graph::bipartite(left, n - left, edges) : Graph::general(n, edges);
}

inline Graph graph_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline Graph load_graph(const std::filesystem::path& path) {
    return graph_from_text(detail::read_file(path));
}

inline void save_graph(const Graph& g, const std::filesystem::path& path) {
    detail::write_file(path, graph_to_text(g));
}

inline std::string matching_to_text(const Matching& m) {
    std::string out;
    for (auto [u, v] : m.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline Matching matching_from_text(const std::string& text, std::size_t node_count) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    Matching m(node_count);
    while (detail::next_data_line(in, line, line_no)) {
        auto tok = detail::split_ws(line);
        if (tok.size() != 2)
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'u v'");
        m.add(detail::parse_int<NodeId>(tok[0], line_no), detail::parse_int<NodeId>(tok[1], line_no));
    }
    return m;
}

} // namespace matchforge
