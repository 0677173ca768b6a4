#pragma once

// Reference computations that share no code with the library: plain
// adjacency lists, memoized recursion and closed forms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <matchforge/graph.hpp>

namespace oracle {

using AdjList = std::vector<std::vector<int>>;

inline AdjList adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
    AdjList adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

inline AdjList adjacency(const matchforge::Graph& g) {
    AdjList adj(g.node_count());
    for (auto [a, b] : g.edges()) {
        adj[a].push_back(static_cast<int>(b));
        adj[b].push_back(static_cast<int>(a));
    }
    return adj;
}

// Maximum matching size by recursion over the lowest free node; memoized on
// the set of free nodes. Fine up to about 24 nodes.
inline int max_matching_size(const AdjList& adj) {
    const int n = static_cast<int>(adj.size());
    std::map<std::uint64_t, int> memo;
    auto solve = [&](auto&& self, std::uint64_t free) -> int {
        if (free == 0) return 0;
        if (auto it = memo.find(free); it != memo.end()) return it->second;
        int u = __builtin_ctzll(free);
        std::uint64_t rest = free & ~(std::uint64_t{1} << u);
        int best = self(self, rest);
        for (int v : adj[u])
            if (rest >> v & 1) best = std::max(best, 1 + self(self, rest & ~(std::uint64_t{1} << v)));
        return memo[free] = best;
    };
    return solve(solve, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

// Kuhn's augmenting-path algorithm for bipartite graphs given as left
// adjacency into right indices.
inline int bipartite_max_matching(int left, int right, const std::vector<std::vector<int>>& ladj) {
    std::vector<int> match_r(right, -1);
    int size = 0;
    for (int u = 0; u < left; ++u) {
        std::vector<char> seen(right, 0);
        auto try_kuhn = [&](auto&& self, int x) -> bool {
            for (int y : ladj[x]) {
                if (seen[y]) continue;
                seen[y] = 1;
                if (match_r[y] < 0 || self(self, match_r[y])) {
                    match_r[y] = x;
                    return true;
                }
            }
            return false;
        };
        if (try_kuhn(try_kuhn, u)) ++size;
    }
    return size;
}

inline int bipartite_max_matching(const matchforge::Graph& g) {
    const int left = static_cast<int>(g.left_count());
    std::vector<std::vector<int>> ladj(left);
    for (auto [a, b] : g.edges()) ladj[a].push_back(static_cast<int>(b) - left);
    return bipartite_max_matching(left, static_cast<int>(g.right_count()), ladj);
}

// Degrees by counting edges whose endpoints both survive.
inline std::vector<int> rescan_degrees(const matchforge::Graph& g) {
    std::vector<int> d(g.node_count(), 0);
    for (auto [a, b] : g.edges())
        if (g.alive(a) && g.alive(b)) ++d[a], ++d[b];
    return d;
}

// Closed forms for the worst-case families.
inline std::size_t trap_nodes(int delta, int k) { return static_cast<std::size_t>(k) * (12 + 4 * (delta - 4)) + 5; }
inline std::size_t trap_alg(int delta, int k, bool perfect) { return std::size_t(delta) * k + (perfect ? 4 : 2); }
inline std::size_t trap_opt(int delta, int k, bool perfect) {
    return std::size_t(2 * delta - 2) * k + (perfect ? 4 : 2);
}
inline std::size_t trap3_alg(int k, bool perfect) { return 6 * std::size_t(k) + (perfect ? 4 : 2); }
inline std::size_t trap3_opt(int k, bool perfect) { return 8 * std::size_t(k) + (perfect ? 4 : 2); }

} // namespace oracle
