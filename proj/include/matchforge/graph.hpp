#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace matchforge {

using NodeId = std::uint32_t;

// Normalized so that first < second.
using Edge = std::pair<NodeId, NodeId>;

inline Edge make_edge(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }

enum class Side : std::uint8_t { Left, Right, None };

inline Side opposite(Side s) {
    return s == Side::Left ? Side::Right : s == Side::Right ? Side::Left : Side::None;
}

// Alive flags and degrees of a graph at one moment. Only valid for the graph
// (or an unmodified copy of it) that produced it.
struct GraphState {
    std::uint64_t structure = 0;
    std::vector<bool> alive;
    std::vector<std::uint32_t> degree;
};

// Simple undirected graph with an optional bipartition. In a bipartite graph
// the left part is the id range [0, left_count) and the right part is the rest.
// Nodes are removed by tombstoning; edges between two alive nodes are "alive".
class Graph {
public:
    Graph() = default;

    static Graph general(std::size_t node_count, std::span<const Edge> edges = {}) {
        Graph g(false, node_count, 0);
        for (auto [u, v] : edges) g.insert(u, v);
        return g;
    }

    static Graph bipartite(std::size_t left_count, std::size_t right_count,
                           std::span<const Edge> edges = {}) {
        Graph g(true, left_count + right_count, left_count);
        for (auto [u, v] : edges) g.insert(u, v);
        return g;
    }

    // For general graphs the third argument is the total node count.
    static Graph build(bool is_bipartite, std::size_t left_count, std::size_t right_or_total,
                       std::span<const Edge> edges) {
        return is_bipartite ? bipartite(left_count, right_or_total, edges)
                            : general(right_or_total, edges);
    }

    std::size_t node_count() const { return adj_.size(); }
    std::size_t left_count() const { return left_count_; }
    std::size_t right_count() const { return bipartite_ ? adj_.size() - left_count_ : 0; }
    bool is_bipartite() const { return bipartite_; }
    std::size_t edge_count() const { return edge_count_; }

    Side side(NodeId u) const {
        check(u);
        if (!bipartite_) return Side::None;
        return u < left_count_ ? Side::Left : Side::Right;
    }

    // Every neighbor ever inserted, ascending, dead or alive.
    std::span<const NodeId> neighbors(NodeId u) const {
        check(u);
        return adj_[u];
    }

    bool alive(NodeId u) const {
        check(u);
        return alive_[u];
    }

    std::uint32_t degree(NodeId u) const {
        check(u);
        return degree_[u];
    }

    bool adjacent(NodeId u, NodeId v) const {
        check(u);
        check(v);
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        NodeId other = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), other);
    }

    bool edge_alive(NodeId u, NodeId v) const { return alive(u) && alive(v) && adjacent(u, v); }

    template <class F>
    void for_each_alive_neighbor(NodeId u, F&& f) const {
        for (NodeId w : neighbors(u))
            if (alive_[w]) f(w);
    }

    std::vector<NodeId> alive_neighbors(NodeId u) const {
        std::vector<NodeId> out;
        out.reserve(degree(u));
        for_each_alive_neighbor(u, [&](NodeId w) { out.push_back(w); });
        return out;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (NodeId u = 0; u < adj_.size(); ++u)
            for (NodeId v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<Edge> alive_edges() const {
        std::vector<Edge> out;
        for (NodeId u = 0; u < adj_.size(); ++u) {
            if (!alive_[u]) continue;
            for (NodeId v : adj_[u])
                if (u < v && alive_[v]) out.emplace_back(u, v);
        }
        return out;
    }

    std::size_t alive_edge_count() const {
        std::size_t twice = 0;
        for (NodeId u = 0; u < adj_.size(); ++u)
            if (alive_[u]) twice += degree_[u];
        return twice / 2;
    }

    std::size_t alive_count() const {
        return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true));
    }

    std::uint32_t max_degree() const {
        std::uint32_t d = 0;
        for (std::size_t u = 0; u < adj_.size(); ++u)
            if (alive_[u]) d = std::max(d, degree_[u]);
        return d;
    }

    // Insert an edge between two alive nodes. Used by generators and by the
    // game adversaries while they commit their graph.
    void add_edge(NodeId u, NodeId v) {
        check(u);
        check(v);
        if (!alive_[u] || !alive_[v])
            fail(ErrorKind::DeadNode, "edge " + pair_text(u, v) + " touches a removed node");
        insert(u, v);
        structure_ = next_structure_id();
    }

    // Remove u and v; every other alive neighbor loses one degree per removed
    // endpoint it was adjacent to.
    void reduce_by_pick(NodeId u, NodeId v) {
        check(u);
        check(v);
        if (!alive_[u] || !alive_[v])
            fail(ErrorKind::DeadNode, "pick " + pair_text(u, v) + " uses a removed node");
        if (u == v || !adjacent(u, v)) fail(ErrorKind::NotAdjacent, "pick " + pair_text(u, v));
        alive_[u] = false;
        alive_[v] = false;
        for (NodeId x : {u, v}) {
            for (NodeId w : adj_[x])
                if (alive_[w]) --degree_[w];
            degree_[x] = 0;
        }
    }

    GraphState snapshot() const { return GraphState{structure_, alive_, degree_}; }

    void restore(const GraphState& s) {
        if (s.structure != structure_ || s.alive.size() != adj_.size())
            fail(ErrorKind::StaleSnapshot, "snapshot belongs to a different graph");
        alive_ = s.alive;
        degree_ = s.degree;
    }

    // A fresh copy of the full structure with every node alive.
    Graph pristine() const {
        Graph g = *this;
        std::fill(g.alive_.begin(), g.alive_.end(), true);
        for (std::size_t u = 0; u < adj_.size(); ++u)
            g.degree_[u] = static_cast<std::uint32_t>(adj_[u].size());
        return g;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.bipartite_ == b.bipartite_ && a.left_count_ == b.left_count_ && a.adj_ == b.adj_ &&
               a.alive_ == b.alive_;
    }

private:
    Graph(bool bip, std::size_t n, std::size_t left)
        : bipartite_(bip),
          left_count_(left),
          adj_(n),
          alive_(n, true),
          degree_(n, 0),
          structure_(next_structure_id()) {}

    static std::uint64_t next_structure_id() {
        static std::atomic<std::uint64_t> counter{1};
        return counter.fetch_add(1, std::memory_order_relaxed);
    }

    static std::string pair_text(NodeId u, NodeId v) {
        return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
    }

    void check(NodeId u) const {
        if (u >= adj_.size())
            fail(ErrorKind::IndexOutOfRange,
                 "node " + std::to_string(u) + " with node_count " + std::to_string(adj_.size()));
    }

    void insert(NodeId u, NodeId v) {
        check(u);
        check(v);
        if (u == v) fail(ErrorKind::SelfLoop, "node " + std::to_string(u));
        if (bipartite_ && (u < left_count_) == (v < left_count_))
            fail(ErrorKind::PartitionViolation, "edge " + pair_text(u, v) + " inside one part");
        auto& au = adj_[u];
        auto it = std::lower_bound(au.begin(), au.end(), v);
        if (it != au.end() && *it == v) fail(ErrorKind::DuplicateEdge, "edge " + pair_text(u, v));
        au.insert(it, v);
        auto& av = adj_[v];
        av.insert(std::lower_bound(av.begin(), av.end(), u), u);
        if (alive_[u] && alive_[v]) {
            ++degree_[u];
            ++degree_[v];
        }
        ++edge_count_;
    }

    bool bipartite_ = false;
    std::size_t left_count_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> adj_;
    std::vector<bool> alive_;
    std::vector<std::uint32_t> degree_;
    std::uint64_t structure_ = 0;
};

// A set of pairwise disjoint edges.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::size_t node_count) : mate_(node_count, none) {}

    static constexpr NodeId none = static_cast<NodeId>(-1);

    void add(NodeId u, NodeId v) {
        if (u >= mate_.size() || v >= mate_.size())
            fail(ErrorKind::IndexOutOfRange, "matching edge outside node range");
        if (u == v) fail(ErrorKind::InvalidMatching, "self pair " + std::to_string(u));
        if (mate_[u] != none || mate_[v] != none)
            fail(ErrorKind::InvalidMatching,
                 "node already covered in (" + std::to_string(u) + "," + std::to_string(v) + ")");
        mate_[u] = v;
        mate_[v] = u;
        ++size_;
    }

    void remove(NodeId u) {
        if (u >= mate_.size() || mate_[u] == none) return;
        mate_[mate_[u]] = none;
        mate_[u] = none;
        --size_;
    }

    bool covered(NodeId u) const { return u < mate_.size() && mate_[u] != none; }

    std::optional<NodeId> partner(NodeId u) const {
        if (!covered(u)) return std::nullopt;
        return mate_[u];
    }

    std::size_t size() const { return size_; }
    std::size_t node_count() const { return mate_.size(); }

    bool contains(NodeId u, NodeId v) const { return covered(u) && mate_[u] == v; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(size_);
        for (NodeId u = 0; u < mate_.size(); ++u)
            if (mate_[u] != none && u < mate_[u]) out.emplace_back(u, mate_[u]);
        return out;
    }

    friend bool operator==(const Matching& a, const Matching& b) { return a.mate_ == b.mate_; }

private:
    std::vector<NodeId> mate_;
    std::size_t size_ = 0;
};

inline Matching matching_from_edges(std::size_t node_count, std::span<const Edge> edges) {
    Matching m(node_count);
    for (auto [u, v] : edges) m.add(u, v);
    return m;
}

// Throws InvalidMatching unless every edge of m is an alive edge of g.
inline void validate_matching(const Graph& g, const Matching& m) {
    if (m.node_count() != g.node_count())
        fail(ErrorKind::InvalidMatching, "matching sized for a different graph");
    for (auto [u, v] : m.edges())
        if (!g.edge_alive(u, v))
            fail(ErrorKind::InvalidMatching,
                 "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
}

// Maximal: no alive edge has both endpoints uncovered.
inline bool is_maximal(const Graph& g, const Matching& m) {
    for (auto [u, v] : g.alive_edges())
        if (!m.covered(u) && !m.covered(v)) return false;
    return true;
}

} // namespace matchforge
