#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "io.hpp"

namespace matchforge {

enum class Algorithm { Greedy, KarpSipser, MinGreedy, MRG, Shuffle, MDS };

inline constexpr Algorithm all_algorithms[] = {Algorithm::Greedy, Algorithm::KarpSipser,
                                               Algorithm::MinGreedy, Algorithm::MRG,
                                               Algorithm::Shuffle, Algorithm::MDS};

inline std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::KarpSipser: return "karpsipser";
    case Algorithm::MinGreedy: return "mingreedy";
    case Algorithm::MRG: return "mrg";
    case Algorithm::Shuffle: return "shuffle";
    case Algorithm::MDS: return "mds";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    for (auto a : all_algorithms)
        if (to_string(a) == s) return a;
    return std::nullopt;
}

struct TieBreakPolicy {
    enum class Kind { Lexicographic, SeededRandom };
    Kind kind = Kind::Lexicographic;
    std::uint64_t seed = 0;

    static TieBreakPolicy lexicographic() { return {}; }
    static TieBreakPolicy seeded(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }

    bool is_lex() const { return kind == Kind::Lexicographic; }
    std::string str() const { return is_lex() ? "lex" : "seeded:" + std::to_string(seed); }
};

// How MinGreedy chooses the partner of its selected node.
enum class NeighborRule { Arbitrary, MinDegree };

struct RunOptions {
    TieBreakPolicy policy;
    NeighborRule neighbor = NeighborRule::Arbitrary;
    // When false the per-pick minimum degree and minimum degree sum are not
    // computed (they cost a scan of the graph each round) and are left at 0.
    bool full_trace = true;
};

// One round of a heuristic, with degrees measured just before the pick.
// u is the selected node for node-driven rules, the smaller id otherwise.
struct Pick {
    NodeId u = 0;
    NodeId v = 0;
    std::uint32_t deg_u = 0;
    std::uint32_t deg_v = 0;
    std::uint32_t min_degree = 0;
    std::uint32_t min_degree_sum = 0;

    friend bool operator==(const Pick&, const Pick&) = default;
};

using Trace = std::vector<Pick>;

struct RunResult {
    Matching matching;
    Trace trace;
};

// Uniform choices from a 64-bit Mersenne Twister; the reduction is done here
// rather than through std::uniform_int_distribution so that streams are the
// same on every standard library.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

class Runner {
public:
    Runner(const Graph& g, const RunOptions& opt)
        : g_(g), opt_(opt), m_(g.node_count()) {
        if (!opt.policy.is_lex()) rng_.emplace(opt.policy.seed);
    }

    const Graph& graph() const { return g_; }
    bool lex() const { return !rng_; }
    SeededRng& rng() { return *rng_; }

    template <class F>
    void pick(NodeId u, NodeId v, F&& on_drop) {
        Pick p{u, v, g_.degree(u), g_.degree(v), 0, 0};
        if (opt_.full_trace) {
            p.min_degree = min_degree();
            p.min_degree_sum = min_degree_sum();
        }
        touched_.clear();
        for (NodeId x : {u, v})
            for (NodeId w : g_.neighbors(x))
                if (w != u && w != v && g_.alive(w)) touched_.push_back(w);
        g_.reduce_by_pick(u, v);
        m_.add(u, v);
        trace_.push_back(p);
        std::sort(touched_.begin(), touched_.end());
        touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
        for (NodeId w : touched_) on_drop(w);
    }

    void pick(NodeId u, NodeId v) {
        pick(u, v, [](NodeId) {});
    }

    std::uint32_t min_degree() const {
        std::uint32_t best = 0;
        for (NodeId x = 0; x < g_.node_count(); ++x) {
            auto d = g_.degree(x);
            if (g_.alive(x) && d > 0 && (best == 0 || d < best)) best = d;
        }
        return best;
    }

    std::uint32_t min_degree_sum() const {
        std::uint32_t best = 0;
        for (NodeId x = 0; x < g_.node_count(); ++x) {
            if (!g_.alive(x)) continue;
            for (NodeId y : g_.neighbors(x))
                if (x < y && g_.alive(y)) {
                    auto s = g_.degree(x) + g_.degree(y);
                    if (best == 0 || s < best) best = s;
                }
        }
        return best;
    }

    // Smallest alive neighbor, or a uniformly random one.
    NodeId any_neighbor(NodeId u) {
        if (lex()) {
            for (NodeId w : g_.neighbors(u))
                if (g_.alive(w)) return w;
        }
        auto nb = g_.alive_neighbors(u);
        return nb[rng_->below(nb.size())];
    }

    NodeId min_degree_neighbor(NodeId u) {
        std::vector<NodeId> best;
        std::uint32_t bd = 0;
        g_.for_each_alive_neighbor(u, [&](NodeId w) {
            auto d = g_.degree(w);
            if (best.empty() || d < bd) {
                best.assign(1, w);
                bd = d;
            } else if (d == bd) {
                best.push_back(w);
            }
        });
        return lex() ? best.front() : best[rng_->below(best.size())];
    }

    RunResult finish() { return RunResult{std::move(m_), std::move(trace_)}; }

private:
    Graph g_;
    const RunOptions& opt_;
    Matching m_;
    Trace trace_;
    std::vector<NodeId> touched_;
    std::optional<SeededRng> rng_;
};

inline RunResult run_greedy(const Graph& g, const RunOptions& opt) {
    Runner r(g, opt);
    const Graph& cur = r.graph();
    if (r.lex()) {
        for (NodeId u = 0; u < cur.node_count(); ++u)
            if (cur.alive(u) && cur.degree(u) > 0) r.pick(u, r.any_neighbor(u));
    } else {
        auto edges = cur.alive_edges();
        r.rng().shuffle(edges);
        for (auto [u, v] : edges)
            if (cur.alive(u) && cur.alive(v)) r.pick(u, v);
    }
    return r.finish();
}

inline RunResult run_karp_sipser(const Graph& g, const RunOptions& opt) {
    Runner r(g, opt);
    const Graph& cur = r.graph();
    const bool lex = r.lex();
    // Degree-one candidates; entries are checked when they come out.
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> heap;
    std::vector<NodeId> bag;
    auto push = [&](NodeId w) {
        if (lex)
            heap.push(w);
        else
            bag.push_back(w);
    };
    for (NodeId u = 0; u < cur.node_count(); ++u)
        if (cur.alive(u) && cur.degree(u) == 1) push(u);
    // Called after the pick with the new degree.
    auto on_drop = [&](NodeId w) {
        if (cur.degree(w) == 1) push(w);
    };
    auto pop_leaf = [&]() -> std::optional<NodeId> {
        while (lex ? !heap.empty() : !bag.empty()) {
            NodeId w;
            if (lex) {
                w = heap.top();
                heap.pop();
            } else {
                std::size_t i = r.rng().below(bag.size());
                w = bag[i];
                bag[i] = bag.back();
                bag.pop_back();
            }
            if (cur.alive(w) && cur.degree(w) == 1) return w;
        }
        return std::nullopt;
    };

    std::vector<Edge> order;
    std::size_t cursor = 0;
    if (!lex) {
        order = cur.alive_edges();
        r.rng().shuffle(order);
    }
    NodeId next = 0;
    while (true) {
        if (auto leaf = pop_leaf()) {
            r.pick(*leaf, r.any_neighbor(*leaf), on_drop);
            continue;
        }
        if (lex) {
            while (next < cur.node_count() && !(cur.alive(next) && cur.degree(next) > 0)) ++next;
            if (next == cur.node_count()) break;
            r.pick(next, r.any_neighbor(next), on_drop);
        } else {
            while (cursor < order.size() &&
                   !(cur.alive(order[cursor].first) && cur.alive(order[cursor].second)))
                ++cursor;
            if (cursor == order.size()) break;
            auto [u, v] = order[cursor++];
            r.pick(u, v, on_drop);
        }
    }
    return r.finish();
}

inline RunResult run_min_greedy(const Graph& g, const RunOptions& opt) {
    Runner r(g, opt);
    const Graph& cur = r.graph();
    std::vector<NodeId> cand;
    while (true) {
        cand.clear();
        std::uint32_t best = 0;
        for (NodeId u = 0; u < cur.node_count(); ++u) {
            if (!cur.alive(u) || cur.degree(u) == 0) continue;
            auto d = cur.degree(u);
            if (best == 0 || d < best) {
                best = d;
                cand.assign(1, u);
            } else if (d == best) {
                cand.push_back(u);
            }
        }
        if (cand.empty()) break;
        NodeId u = r.lex() ? cand.front() : cand[r.rng().below(cand.size())];
        NodeId v = opt.neighbor == NeighborRule::MinDegree ? r.min_degree_neighbor(u)
                                                           : r.any_neighbor(u);
        r.pick(u, v);
    }
    return r.finish();
}

inline RunResult run_mrg(const Graph& g, const RunOptions& opt) {
    if (opt.policy.is_lex()) return run_greedy(g, opt);
    Runner r(g, opt);
    const Graph& cur = r.graph();
    std::vector<NodeId> pool;
    for (NodeId u = 0; u < cur.node_count(); ++u)
        if (cur.alive(u) && cur.degree(u) > 0) pool.push_back(u);
    while (!pool.empty()) {
        std::size_t i = r.rng().below(pool.size());
        NodeId u = pool[i];
        if (!cur.alive(u) || cur.degree(u) == 0) {
            pool[i] = pool.back();
            pool.pop_back();
            continue;
        }
        r.pick(u, r.any_neighbor(u));
    }
    return r.finish();
}

inline RunResult run_shuffle(const Graph& g, const RunOptions& opt) {
    Runner r(g, opt);
    const Graph& cur = r.graph();
    std::vector<NodeId> order(cur.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    if (!r.lex()) r.rng().shuffle(order);
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    for (NodeId u : order) {
        if (!cur.alive(u) || cur.degree(u) == 0) continue;
        NodeId best = Matching::none;
        cur.for_each_alive_neighbor(u, [&](NodeId w) {
            if (best == Matching::none || rank[w] < rank[best]) best = w;
        });
        r.pick(u, best);
    }
    return r.finish();
}

inline RunResult run_mds(const Graph& g, const RunOptions& opt) {
    Runner r(g, opt);
    const Graph& cur = r.graph();
    std::vector<Edge> cand;
    while (true) {
        cand.clear();
        std::uint32_t best = 0;
        for (NodeId u = 0; u < cur.node_count(); ++u) {
            if (!cur.alive(u)) continue;
            for (NodeId v : cur.neighbors(u)) {
                if (v < u || !cur.alive(v)) continue;
                auto s = cur.degree(u) + cur.degree(v);
                if (best == 0 || s < best) {
                    best = s;
                    cand.assign(1, {u, v});
                } else if (s == best) {
                    cand.emplace_back(u, v);
                }
            }
        }
        if (cand.empty()) break;
        auto [u, v] = r.lex() ? cand.front() : cand[r.rng().below(cand.size())];
        r.pick(u, v);
    }
    return r.finish();
}

} // namespace detail

inline RunResult run_heuristic(Algorithm a, const Graph& g, const RunOptions& opt = {}) {
    switch (a) {
    case Algorithm::Greedy: return detail::run_greedy(g, opt);
    case Algorithm::KarpSipser: return detail::run_karp_sipser(g, opt);
    case Algorithm::MinGreedy: return detail::run_min_greedy(g, opt);
    case Algorithm::MRG: return detail::run_mrg(g, opt);
    case Algorithm::Shuffle: return detail::run_shuffle(g, opt);
    case Algorithm::MDS: return detail::run_mds(g, opt);
    }
    fail(ErrorKind::BadParams, "unknown algorithm");
}

// "<round> <u> <v> <deg_u> <deg_v> <mindeg> <mindegsum>", rounds from 1.
inline std::string trace_to_text(const Trace& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& p = t[i];
        out += std::to_string(i + 1) + " " + std::to_string(p.u) + " " + std::to_string(p.v) + " " +
               std::to_string(p.deg_u) + " " + std::to_string(p.deg_v) + " " +
               std::to_string(p.min_degree) + " " + std::to_string(p.min_degree_sum) + "\n";
    }
    return out;
}

inline Trace trace_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    Trace t;
    while (detail::next_data_line(in, line, line_no)) {
        auto tok = detail::split_ws(line);
        if (tok.size() != 7)
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 7 fields");
        if (detail::parse_int<std::size_t>(tok[0], line_no) != t.size() + 1)
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": rounds out of order");
        Pick p;
        p.u = detail::parse_int<NodeId>(tok[1], line_no);
        p.v = detail::parse_int<NodeId>(tok[2], line_no);
        p.deg_u = detail::parse_int<std::uint32_t>(tok[3], line_no);
        p.deg_v = detail::parse_int<std::uint32_t>(tok[4], line_no);
        p.min_degree = detail::parse_int<std::uint32_t>(tok[5], line_no);
        p.min_degree_sum = detail::parse_int<std::uint32_t>(tok[6], line_no);
        t.push_back(p);
    }
    return t;
}

// Smallest and largest matching a rule can end with over every possible way
// of breaking its ties. Exponential; meant for graphs of a dozen nodes or so.
struct OutcomeRange {
    std::size_t min_size = 0;
    std::size_t max_size = 0;
};

inline constexpr std::size_t tie_break_search_node_limit = 24;

namespace detail {

// Picks the rule may make in the current state.
inline std::vector<Edge> allowed_picks(Algorithm a, NeighborRule rule, const Graph& g) {
    auto edges = g.alive_edges();
    if (edges.empty()) return edges;
    std::vector<Edge> out;
    auto deg = [&](NodeId x) { return g.degree(x); };
    switch (a) {
    case Algorithm::Greedy:
    case Algorithm::MRG:
        return edges;
    case Algorithm::KarpSipser: {
        for (auto [u, v] : edges)
            if (deg(u) == 1 || deg(v) == 1) out.emplace_back(u, v);
        return out.empty() ? edges : out;
    }
    case Algorithm::MinGreedy: {
        std::uint32_t md = 0;
        for (auto [u, v] : edges)
            for (NodeId x : {u, v})
                if (md == 0 || deg(x) < md) md = deg(x);
        auto ok = [&](NodeId s, NodeId t) {
            if (deg(s) != md) return false;
            if (rule == NeighborRule::Arbitrary) return true;
            std::uint32_t nd = 0;
            g.for_each_alive_neighbor(s, [&](NodeId w) {
                if (nd == 0 || deg(w) < nd) nd = deg(w);
            });
            return deg(t) == nd;
        };
        for (auto [u, v] : edges)
            if (ok(u, v) || ok(v, u)) out.emplace_back(u, v);
        return out;
    }
    case Algorithm::MDS: {
        std::uint32_t ms = 0;
        for (auto [u, v] : edges)
            if (ms == 0 || deg(u) + deg(v) < ms) ms = deg(u) + deg(v);
        for (auto [u, v] : edges)
            if (deg(u) + deg(v) == ms) out.emplace_back(u, v);
        return out;
    }
    case Algorithm::Shuffle:
        break;
    }
    fail(ErrorKind::BadParams, "no per-step rule for this algorithm");
}

struct OutcomeSearch {
    Algorithm a;
    NeighborRule rule;
    Graph g;
    std::unordered_map<std::uint64_t, OutcomeRange> memo;

    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (NodeId u = 0; u < g.node_count(); ++u)
            if (g.alive(u)) k |= std::uint64_t{1} << u;
        return k;
    }

    OutcomeRange solve() {
        auto k = key();
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        auto picks = allowed_picks(a, rule, g);
        OutcomeRange res{0, 0};
        bool first = true;
        for (auto [u, v] : picks) {
            auto saved = g.snapshot();
            g.reduce_by_pick(u, v);
            auto sub = solve();
            g.restore(saved);
            if (first || sub.min_size + 1 < res.min_size) res.min_size = sub.min_size + 1;
            if (first || sub.max_size + 1 > res.max_size) res.max_size = sub.max_size + 1;
            first = false;
        }
        memo.emplace(k, res);
        return res;
    }
};

} // namespace detail

inline OutcomeRange tie_break_outcomes(Algorithm a, const Graph& g,
                                       NeighborRule rule = NeighborRule::Arbitrary) {
    if (g.node_count() > tie_break_search_node_limit)
        fail(ErrorKind::TooLarge, "tie-break search is limited to " +
                                      std::to_string(tie_break_search_node_limit) + " nodes");
    if (a == Algorithm::Shuffle) fail(ErrorKind::BadParams, "shuffle has no per-step rule");
    detail::OutcomeSearch s{a, rule, g, {}};
    return s.solve();
}

} // namespace matchforge
