#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "heuristics.hpp"
#include "rational.hpp"

namespace matchforge {

enum class ComponentKind { Singleton, AugmentingPath };

inline std::string_view to_string(ComponentKind k) {
    return k == ComponentKind::Singleton ? "singleton" : "path";
}

// A component of M united with the normalized M*. Path nodes run from one
// endpoint to the other; the first and last node are uncovered by M.
struct HComponent {
    ComponentKind kind = ComponentKind::Singleton;
    std::vector<NodeId> nodes;
    std::size_t w = 0;
    std::size_t w_star = 0;

    Rational local_ratio() const { return Rational(static_cast<std::int64_t>(w),
                                                   static_cast<std::int64_t>(w_star)); }
    std::pair<NodeId, NodeId> endpoints() const { return {nodes.front(), nodes.back()}; }
};

struct Decomposition {
    std::vector<HComponent> components;
    // M* after even paths and cycles have been replaced by their M-edges.
    Matching normalized_opt;
};

// Largest degree in the full structure, ignoring removals.
inline std::uint32_t structural_max_degree(const Graph& g) {
    std::size_t d = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) d = std::max(d, g.neighbors(u).size());
    return static_cast<std::uint32_t>(d);
}

inline Decomposition decompose(const Graph& g, const Matching& m, const Matching& m_star) {
    validate_matching(g, m);
    validate_matching(g, m_star);
    if (m_star.size() < m.size())
        fail(ErrorKind::NotMaximum, "reference matching is smaller than the heuristic one");

    const std::size_t n = g.node_count();
    Decomposition out;
    out.normalized_opt = m_star;
    std::vector<bool> seen(n, false);

    auto h_degree = [&](NodeId u) {
        if (m.covered(u) && m_star.covered(u) && *m.partner(u) == *m_star.partner(u)) return 1;
        return (m.covered(u) ? 1 : 0) + (m_star.covered(u) ? 1 : 0);
    };

    // Walks from start, alternating between the two matchings.
    auto walk = [&](NodeId start, bool use_m_first) {
        std::vector<NodeId> nodes{start};
        seen[start] = true;
        NodeId cur = start;
        bool use_m = use_m_first;
        while (true) {
            auto next = use_m ? m.partner(cur) : m_star.partner(cur);
            if (!next || seen[*next]) break;
            cur = *next;
            seen[cur] = true;
            nodes.push_back(cur);
            use_m = !use_m;
        }
        return nodes;
    };

    auto emit_singletons = [&](const std::vector<NodeId>& nodes) {
        for (NodeId u : nodes) {
            auto p = m.partner(u);
            if (!p || *p < u) continue;
            out.components.push_back({ComponentKind::Singleton, {u, *p}, 1, 1});
        }
    };

    // Replaces the M*-edges among nodes by the M-edges among them.
    auto normalize = [&](const std::vector<NodeId>& nodes) {
        for (NodeId u : nodes) out.normalized_opt.remove(u);
        for (NodeId u : nodes) {
            auto p = m.partner(u);
            if (p && u < *p) out.normalized_opt.add(u, *p);
        }
    };

    auto count_edges = [](const std::vector<NodeId>& nodes, const Matching& mm) {
        std::size_t c = 0;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
            if (mm.contains(nodes[i], nodes[i + 1])) ++c;
        return c;
    };

    for (NodeId u = 0; u < n; ++u) {
        if (seen[u] || h_degree(u) != 1) continue;
        if (m.covered(u) && m_star.covered(u)) {
            NodeId p = *m.partner(u);
            seen[u] = seen[p] = true;
            out.components.push_back({ComponentKind::Singleton, {std::min(u, p), std::max(u, p)}, 1, 1});
            continue;
        }
        auto nodes = walk(u, m.covered(u));
        std::size_t w = count_edges(nodes, m);
        std::size_t ws = count_edges(nodes, m_star);
        if (ws == w + 1) {
            if (nodes.back() < nodes.front()) std::reverse(nodes.begin(), nodes.end());
            out.components.push_back({ComponentKind::AugmentingPath, std::move(nodes), w, ws});
        } else if (w == ws + 1) {
            fail(ErrorKind::NotMaximum, "reference matching has an augmenting path");
        } else {
            normalize(nodes);
            emit_singletons(nodes);
        }
    }
    // Whatever is left with two H-edges lies on an alternating cycle.
    for (NodeId u = 0; u < n; ++u) {
        if (seen[u] || h_degree(u) != 2) continue;
        auto nodes = walk(u, true);
        normalize(nodes);
        emit_singletons(nodes);
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const HComponent& a, const HComponent& b) { return a.nodes < b.nodes; });
    return out;
}

struct RatioReport {
    std::size_t alg_size = 0;
    std::size_t opt_size = 0;
    Rational ratio{1};
    std::uint32_t delta = 0;
    Rational bound{1};
    bool bound_holds = true;
    std::vector<HComponent> components;
};

inline Rational matching_ratio(std::size_t alg, std::size_t opt) {
    if (opt == 0) return Rational(1);
    return Rational(static_cast<std::int64_t>(alg), static_cast<std::int64_t>(opt));
}

inline RatioReport ratio_report(const Graph& g, const Matching& m, const Matching& m_star) {
    if (g.is_bipartite() && !is_maximum(g, m_star))
        fail(ErrorKind::NotMaximum, "reference matching is not maximum");
    RatioReport r;
    r.components = decompose(g, m, m_star).components;
    r.alg_size = m.size();
    r.opt_size = m_star.size();
    r.ratio = matching_ratio(r.alg_size, r.opt_size);
    r.delta = structural_max_degree(g);
    r.bound = karp_sipser_bound(r.delta);
    r.bound_holds = r.ratio >= r.bound;
    return r;
}

inline bool check_maximal(const Graph& g, const Matching& m) {
    validate_matching(g, m);
    return is_maximal(g, m);
}

inline std::string csv_header() {
    return "instance,algorithm,policy,alg_size,opt_size,ratio_num,ratio_den,delta,bound_num,"
           "bound_den,bound_holds";
}

inline std::string csv_row(const std::string& instance, const std::string& algorithm,
                           const std::string& policy, const RatioReport& r) {
    return instance + "," + algorithm + "," + policy + "," + std::to_string(r.alg_size) + "," +
           std::to_string(r.opt_size) + "," + std::to_string(r.ratio.num()) + "," +
           std::to_string(r.ratio.den()) + "," + std::to_string(r.delta) + "," +
           std::to_string(r.bound.num()) + "," + std::to_string(r.bound.den()) + "," +
           (r.bound_holds ? "true" : "false");
}

struct TraceViolation {
    enum class Kind {
        // A part holds a degree-1 path endpoint but no other degree-1 node.
        LoneEndpoint,
        // A pick lowered some surviving node's degree by more than one.
        DegreeDrop,
    };
    Kind kind;
    // Number of picks made before the offending state.
    std::size_t round;
    NodeId node;
};

// Replays a KarpSipser trace and checks the same-side degree-1 property and
// unit degree steps. Endpoints come from the final matching against the
// normalized m_star.
inline std::vector<TraceViolation> check_karp_sipser_trace(const Graph& g, const Trace& t,
                                                           const Matching& m_star) {
    if (!g.is_bipartite()) fail(ErrorKind::NotBipartite, "the checker needs a bipartite graph");
    Graph cur = g;
    Matching m(g.node_count());
    auto mismatch = [](std::size_t round, const std::string& what) {
        fail(ErrorKind::TraceMismatch, "round " + std::to_string(round + 1) + ": " + what);
    };
    auto has_leaf = [&]() {
        for (NodeId x = 0; x < cur.node_count(); ++x)
            if (cur.alive(x) && cur.degree(x) == 1) return true;
        return false;
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& p = t[i];
        if (p.u >= cur.node_count() || p.v >= cur.node_count() || !cur.edge_alive(p.u, p.v))
            mismatch(i, "pick is not an alive edge");
        if (cur.degree(p.u) != p.deg_u || cur.degree(p.v) != p.deg_v)
            mismatch(i, "recorded degrees differ from the replay");
        if (has_leaf() && cur.degree(p.u) != 1 && cur.degree(p.v) != 1)
            mismatch(i, "a degree-1 node exists but the pick has none");
        cur.reduce_by_pick(p.u, p.v);
        m.add(p.u, p.v);
    }
    if (cur.alive_edge_count() != 0) mismatch(t.size(), "trace stops while edges remain");

    auto dec = decompose(g, m, m_star);
    std::vector<bool> endpoint(g.node_count(), false);
    for (const auto& c : dec.components)
        if (c.kind == ComponentKind::AugmentingPath) {
            endpoint[c.nodes.front()] = true;
            endpoint[c.nodes.back()] = true;
        }

    std::vector<TraceViolation> out;
    cur = g;
    auto inspect = [&](std::size_t round) {
        for (Side s : {Side::Left, Side::Right}) {
            std::optional<NodeId> lone;
            bool other = false;
            for (NodeId x = 0; x < cur.node_count(); ++x) {
                if (cur.side(x) != s || !cur.alive(x) || cur.degree(x) != 1) continue;
                if (endpoint[x]) {
                    if (!lone) lone = x;
                } else {
                    other = true;
                }
            }
            if (lone && !other)
                out.push_back({TraceViolation::Kind::LoneEndpoint, round, *lone});
        }
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
        inspect(i);
        auto before = cur.snapshot();
        cur.reduce_by_pick(t[i].u, t[i].v);
        for (NodeId x = 0; x < cur.node_count(); ++x)
            if (cur.alive(x) && before.degree[x] > cur.degree(x) + 1)
                out.push_back({TraceViolation::Kind::DegreeDrop, i + 1, x});
    }
    inspect(t.size());
    return out;
}

} // namespace matchforge
