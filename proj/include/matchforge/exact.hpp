#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace matchforge {

// The exact matchers work on the alive part of the graph. On a graph that has
// not been reduced that is the whole graph.

inline constexpr std::size_t brute_force_edge_limit = 24;

enum class BruteForceMode {
    SubsetEnumeration,
    AugmentingSearch,
};

namespace detail {

constexpr std::uint32_t hk_inf = std::numeric_limits<std::uint32_t>::max();

struct HopcroftKarp {
    const Graph& g;
    std::size_t left;
    std::vector<NodeId> mate;
    std::vector<std::uint32_t> dist;
    std::vector<std::size_t> it;

    explicit HopcroftKarp(const Graph& graph)
        : g(graph),
          left(graph.left_count()),
          mate(graph.node_count(), Matching::none),
          dist(graph.node_count(), hk_inf),
          it(graph.node_count(), 0) {}

    bool bfs() {
        std::queue<NodeId> q;
        bool found = false;
        for (NodeId u = 0; u < left; ++u) {
            if (g.alive(u) && mate[u] == Matching::none) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = hk_inf;
            }
        }
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop();
            for (NodeId v : g.neighbors(u)) {
                if (!g.alive(v)) continue;
                NodeId w = mate[v];
                if (w == Matching::none) {
                    found = true;
                } else if (dist[w] == hk_inf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    // Iterative so that long augmenting paths do not exhaust the stack.
    bool dfs(NodeId root) {
        std::vector<NodeId> stack{root};
        std::vector<NodeId> via;
        while (!stack.empty()) {
            NodeId u = stack.back();
            auto nb = g.neighbors(u);
            bool advanced = false;
            while (it[u] < nb.size()) {
                NodeId v = nb[it[u]++];
                if (!g.alive(v)) continue;
                NodeId w = mate[v];
                if (w == Matching::none) {
                    via.push_back(v);
                    for (std::size_t i = stack.size(); i-- > 0;) {
                        NodeId a = stack[i];
                        NodeId b = via[i];
                        mate[a] = b;
                        mate[b] = a;
                    }
                    return true;
                }
                if (dist[w] == dist[u] + 1) {
                    via.push_back(v);
                    stack.push_back(w);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist[u] = hk_inf;
                stack.pop_back();
                if (!via.empty()) via.pop_back();
            }
        }
        return false;
    }

    Matching run() {
        while (bfs()) {
            std::fill(it.begin(), it.end(), 0);
            for (NodeId u = 0; u < left; ++u)
                if (g.alive(u) && mate[u] == Matching::none) dfs(u);
        }
        Matching m(g.node_count());
        for (NodeId u = 0; u < left; ++u)
            if (mate[u] != Matching::none) m.add(u, mate[u]);
        return m;
    }
};

// Exhaustive search over simple alternating paths; fine for general graphs
// because it never contracts anything.
struct AugmentSearch {
    const Graph& g;
    const Matching& m;
    std::vector<bool> on_path;
    std::vector<NodeId> path;

    AugmentSearch(const Graph& graph, const Matching& matching)
        : g(graph), m(matching), on_path(graph.node_count(), false) {}

    // u was reached through a matched edge (or is the free start); leave by a
    // non-matching edge.
    bool extend(NodeId u) {
        for (NodeId v : g.neighbors(u)) {
            if (!g.alive(v) || on_path[v] || m.contains(u, v)) continue;
            if (!m.covered(v)) {
                path.push_back(v);
                return true;
            }
            NodeId w = *m.partner(v);
            if (on_path[w]) continue;
            on_path[v] = on_path[w] = true;
            path.push_back(v);
            path.push_back(w);
            if (extend(w)) return true;
            path.pop_back();
            path.pop_back();
            on_path[v] = on_path[w] = false;
        }
        return false;
    }

    std::optional<std::vector<NodeId>> find() {
        for (NodeId s = 0; s < g.node_count(); ++s) {
            if (!g.alive(s) || m.covered(s) || g.degree(s) == 0) continue;
            path.assign(1, s);
            on_path[s] = true;
            bool ok = extend(s);
            on_path[s] = false;
            for (NodeId x : path) on_path[x] = false;
            if (ok) return path;
        }
        return std::nullopt;
    }
};

// Layered alternating BFS from every free left node.
inline std::optional<std::vector<NodeId>> bipartite_augmenting_path(const Graph& g,
                                                                    const Matching& m) {
    std::vector<NodeId> parent(g.node_count(), Matching::none);
    std::vector<bool> seen(g.node_count(), false);
    std::queue<NodeId> q;
    for (NodeId u = 0; u < g.left_count(); ++u)
        if (g.alive(u) && !m.covered(u)) {
            seen[u] = true;
            q.push(u);
        }
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (NodeId v : g.neighbors(u)) {
            if (!g.alive(v) || seen[v]) continue;
            seen[v] = true;
            parent[v] = u;
            if (!m.covered(v)) {
                std::vector<NodeId> path{v};
                NodeId x = v;
                while (true) {
                    NodeId l = parent[x];
                    path.push_back(l);
                    if (!m.covered(l)) break;
                    x = *m.partner(l);
                    path.push_back(x);
                }
                return path;
            }
            NodeId w = *m.partner(v);
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = v;
                q.push(w);
            }
        }
    }
    return std::nullopt;
}

inline void augment(Matching& m, const std::vector<NodeId>& path) {
    for (std::size_t i = 1; i + 1 < path.size(); i += 2) m.remove(path[i]);
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) m.add(path[i], path[i + 1]);
}

struct SubsetSearch {
    const std::vector<Edge>& edges;
    std::vector<bool> used;
    std::vector<std::size_t> current, best;

    SubsetSearch(const std::vector<Edge>& e, std::size_t n) : edges(e), used(n, false) {}

    void run(std::size_t i) {
        if (current.size() + (edges.size() - i) <= best.size()) return;
        if (i == edges.size()) {
            best = current;
            return;
        }
        auto [u, v] = edges[i];
        if (!used[u] && !used[v]) {
            used[u] = used[v] = true;
            current.push_back(i);
            run(i + 1);
            current.pop_back();
            used[u] = used[v] = false;
        }
        run(i + 1);
    }
};

} // namespace detail

inline Matching max_matching_bipartite(const Graph& g) {
    if (!g.is_bipartite()) fail(ErrorKind::NotBipartite, "Hopcroft-Karp needs a bipartite graph");
    return detail::HopcroftKarp(g).run();
}

inline Matching max_matching_brute_force(const Graph& g,
                                         BruteForceMode mode = BruteForceMode::SubsetEnumeration) {
    auto edges = g.alive_edges();
    if (edges.size() > brute_force_edge_limit)
        fail(ErrorKind::TooLarge, std::to_string(edges.size()) + " edges exceed the limit of " +
                                      std::to_string(brute_force_edge_limit));
    Matching m(g.node_count());
    if (mode == BruteForceMode::SubsetEnumeration) {
        detail::SubsetSearch s(edges, g.node_count());
        s.run(0);
        for (auto i : s.best) m.add(edges[i].first, edges[i].second);
        return m;
    }
    while (auto path = detail::AugmentSearch(g, m).find()) detail::augment(m, *path);
    return m;
}

// Any maximum matching of the alive part: Hopcroft-Karp when bipartite,
// otherwise the brute-force search (small graphs only).
inline Matching max_matching(const Graph& g) {
    return g.is_bipartite() ? max_matching_bipartite(g)
                            : max_matching_brute_force(g, BruteForceMode::AugmentingSearch);
}

inline std::optional<std::vector<NodeId>> find_augmenting_path(const Graph& g, const Matching& m) {
    validate_matching(g, m);
    if (g.is_bipartite()) return detail::bipartite_augmenting_path(g, m);
    if (g.alive_edge_count() > brute_force_edge_limit)
        fail(ErrorKind::TooLarge, "augmenting path search on a large general graph");
    return detail::AugmentSearch(g, m).find();
}

inline bool is_maximum(const Graph& g, const Matching& m) { return !find_augmenting_path(g, m); }

} // namespace matchforge
