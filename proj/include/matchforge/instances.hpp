#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "heuristics.hpp"

namespace matchforge {

enum class Family {
    TrapChain,
    TrapChainD3,
    TwoSidedD3,
    MdsStar,
    AvgDegree,
    ChordedC4,
    RandomBipartite,
    RandomGeneral,
};

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::TrapChain: return "trap";
    case Family::TrapChainD3: return "trap3";
    case Family::TwoSidedD3: return "twosided3";
    case Family::MdsStar: return "mds";
    case Family::AvgDegree: return "avgdeg";
    case Family::ChordedC4: return "c4chord";
    case Family::RandomBipartite: return "random";
    case Family::RandomGeneral: return "randomgen";
    }
    return "?";
}

struct InstanceDescriptor {
    Family family = Family::RandomBipartite;
    std::vector<std::pair<std::string, std::int64_t>> params;
    // The heuristic whose Lexicographic run the labels are built for.
    std::optional<Algorithm> designated;
    std::optional<std::size_t> expected_alg_size;
    std::optional<std::size_t> expected_opt_size;

    std::optional<std::int64_t> param(std::string_view key) const {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return std::nullopt;
    }

    // e.g. "trap;delta=4;k=3;perfect=0"
    std::string name() const {
        std::string s(to_string(family));
        for (const auto& [k, v] : params) s += ";" + k + "=" + std::to_string(v);
        return s;
    }

    // Comment lines that travel next to the graph file.
    std::string sidecar() const {
        std::string s = "# instance " + name();
        if (designated) s += " algorithm=" + std::string(to_string(*designated));
        s += "\n";
        if (expected_alg_size || expected_opt_size) {
            s += "# expect";
            if (expected_alg_size) s += " alg=" + std::to_string(*expected_alg_size);
            if (expected_opt_size) s += " opt=" + std::to_string(*expected_opt_size);
            s += "\n";
        }
        return s;
    }
};

struct Instance {
    Graph graph;
    InstanceDescriptor descriptor;
};

namespace detail {

// Collects nodes and edges by handle, two-colors the result and hands out
// ids: left nodes first, each part ordered by (rank, creation order).
class LabeledBuilder {
public:
    using Handle = std::size_t;

    // Rank used for nodes whose position does not matter.
    static constexpr std::int64_t rest = std::int64_t{1} << 40;

    Handle node(std::int64_t rank, std::optional<Side> hint = std::nullopt) {
        rank_.push_back(rank);
        hint_.push_back(hint);
        adj_.emplace_back();
        return rank_.size() - 1;
    }

    // Nodes whose order matters get increasing ranks in creation order.
    Handle first() { return node(next_first_++); }
    Handle later() { return node(rest + next_later_++); }

    void pin(Handle h, Side s) { hint_[h] = s; }

    void edge(Handle a, Handle b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        edges_.emplace_back(a, b);
    }

    std::size_t size() const { return rank_.size(); }

    struct Result {
        Graph graph;
        std::vector<NodeId> id;
    };

    Result build_bipartite() const {
        const std::size_t n = size();
        std::vector<Side> side(n, Side::None);
        auto color_from = [&](Handle s, Side c) {
            std::queue<Handle> q;
            side[s] = c;
            q.push(s);
            while (!q.empty()) {
                Handle x = q.front();
                q.pop();
                for (Handle y : adj_[x]) {
                    if (side[y] == Side::None) {
                        side[y] = opposite(side[x]);
                        q.push(y);
                    } else if (side[y] == side[x]) {
                        throw std::logic_error("generator produced an odd cycle");
                    }
                }
            }
        };
        for (Handle h = 0; h < n; ++h)
            if (hint_[h] && side[h] == Side::None) color_from(h, *hint_[h]);
        for (Handle h = 0; h < n; ++h)
            if (side[h] == Side::None) color_from(h, Side::Left);
        for (Handle h = 0; h < n; ++h)
            if (hint_[h] && *hint_[h] != side[h])
                throw std::logic_error("generator side pins disagree");

        std::vector<Handle> left, right;
        for (Handle h = 0; h < n; ++h) (side[h] == Side::Left ? left : right).push_back(h);
        auto by_rank = [&](Handle a, Handle b) {
            return rank_[a] != rank_[b] ? rank_[a] < rank_[b] : a < b;
        };
        std::sort(left.begin(), left.end(), by_rank);
        std::sort(right.begin(), right.end(), by_rank);
        Result r;
        r.id.assign(n, 0);
        NodeId next = 0;
        for (Handle h : left) r.id[h] = next++;
        for (Handle h : right) r.id[h] = next++;
        r.graph = Graph::bipartite(left.size(), right.size(), mapped_edges(r.id));
        return r;
    }

    Result build_general() const {
        std::vector<Handle> order(size());
        for (Handle h = 0; h < size(); ++h) order[h] = h;
        std::sort(order.begin(), order.end(), [&](Handle a, Handle b) {
            return rank_[a] != rank_[b] ? rank_[a] < rank_[b] : a < b;
        });
        Result r;
        r.id.assign(size(), 0);
        for (std::size_t i = 0; i < order.size(); ++i) r.id[order[i]] = static_cast<NodeId>(i);
        r.graph = Graph::general(size(), mapped_edges(r.id));
        return r;
    }

private:
    std::vector<Edge> mapped_edges(const std::vector<NodeId>& id) const {
        std::vector<Edge> out;
        out.reserve(edges_.size());
        for (auto [a, b] : edges_) out.push_back(make_edge(id[a], id[b]));
        return out;
    }

    std::vector<std::int64_t> rank_;
    std::vector<std::optional<Side>> hint_;
    std::vector<std::vector<Handle>> adj_;
    std::vector<std::pair<Handle, Handle>> edges_;
    std::int64_t next_first_ = 0;
    std::int64_t next_later_ = 0;
};

using H = LabeledBuilder::Handle;

inline void cycle4(LabeledBuilder& b, H a, H c, H d, H e) {
    b.edge(a, c);
    b.edge(c, d);
    b.edge(d, e);
    b.edge(e, a);
}

// Node roles of one trap (degree bound at least four).
struct TrapNodes {
    std::vector<H> x, y, w, z;
    H c1, c2, c3, c4, p1, p2, d1, d2, d3, d4, q1, q2;
};

// Node roles of one trap in the degree-three chain.
struct Trap3Nodes {
    H c1, c2, c3, c4, p1, p2, p3, p4, d1, d2, d3, d4, q1, q2, q3, q4;
};

} // namespace detail

// Handles of a generated trap chain mapped to node ids, for callers that need
// to know where each role ended up (the game adversary, tests).
struct TrapLayout {
    struct Trap {
        std::vector<NodeId> x, y, w, z;
        NodeId c1, c2, c3, c4, p1, p2, d1, d2, d3, d4, q1, q2;
        // Only used for the degree-three chain.
        NodeId p3 = 0, p4 = 0, q3 = 0, q4 = 0;
    };
    std::vector<Trap> traps;
    // e0, or f1..f4 in the perfect variant.
    std::vector<NodeId> head;
    NodeId e1, e2, e3, e4;
    // Extra nodes on the e1/e3 side of the tail (zero in the plain chain).
    std::vector<NodeId> padding;
};

inline std::pair<Instance, TrapLayout> gen_trap_chain_with_layout(int delta, int k, bool perfect,
                                                                  int tail_padding = 0);

inline std::pair<Instance, TrapLayout> gen_trap_chain_d3_with_layout(int k, bool perfect) {
    if (k < 1) fail(ErrorKind::BadParams, "trap chain needs k >= 1");
    detail::LabeledBuilder b;
    std::vector<detail::Trap3Nodes> traps(k);
    // p3 then q2 lead on the left, p2 then q3 on the right.
    for (auto& t : traps) {
        t.p3 = b.first();
        t.p2 = b.first();
        t.q2 = b.first();
        t.q3 = b.first();
    }
    std::vector<detail::H> head;
    if (perfect) {
        for (int i = 0; i < 4; ++i) head.push_back(b.later());
    } else {
        head.push_back(b.later());
    }
    for (auto& t : traps) {
        for (auto* h : {&t.c1, &t.c2, &t.c3, &t.c4, &t.p1, &t.p4, &t.d1, &t.d2, &t.d3, &t.d4,
                        &t.q1, &t.q4})
            *h = b.later();
    }
    auto e1 = b.later(), e2 = b.later(), e3 = b.later(), e4 = b.later();
    b.pin(traps[0].p3, Side::Left);

    for (int i = 0; i < k; ++i) {
        auto& t = traps[i];
        detail::cycle4(b, t.c1, t.c2, t.c3, t.c4);
        b.edge(t.c1, t.p1);
        b.edge(t.p1, t.p2);
        b.edge(t.p2, t.p3);
        b.edge(t.p3, t.p4);
        detail::cycle4(b, t.d1, t.d2, t.d3, t.d4);
        b.edge(t.d1, t.q1);
        b.edge(t.q1, t.q2);
        b.edge(t.q2, t.q3);
        b.edge(t.q3, t.q4);
        b.edge(t.p4, t.q2);
        b.edge(t.p4, t.d3);
        if (i == 0) {
            if (perfect) {
                detail::cycle4(b, head[0], head[1], head[2], head[3]);
                b.edge(head[0], t.p2);
                b.edge(head[2], t.c3);
            } else {
                b.edge(head[0], t.p2);
                b.edge(head[0], t.c3);
            }
        } else {
            b.edge(traps[i - 1].q4, t.p2);
            b.edge(traps[i - 1].q4, t.c3);
        }
    }
    detail::cycle4(b, e1, e2, e3, e4);
    b.edge(traps.back().q4, e1);
    b.edge(traps.back().q4, e3);

    auto r = b.build_bipartite();
    TrapLayout lay;
    for (auto& t : traps) {
        TrapLayout::Trap o{};
        o.c1 = r.id[t.c1], o.c2 = r.id[t.c2], o.c3 = r.id[t.c3], o.c4 = r.id[t.c4];
        o.p1 = r.id[t.p1], o.p2 = r.id[t.p2], o.p3 = r.id[t.p3], o.p4 = r.id[t.p4];
        o.d1 = r.id[t.d1], o.d2 = r.id[t.d2], o.d3 = r.id[t.d3], o.d4 = r.id[t.d4];
        o.q1 = r.id[t.q1], o.q2 = r.id[t.q2], o.q3 = r.id[t.q3], o.q4 = r.id[t.q4];
        lay.traps.push_back(o);
    }
    for (auto h : head) lay.head.push_back(r.id[h]);
    lay.e1 = r.id[e1], lay.e2 = r.id[e2], lay.e3 = r.id[e3], lay.e4 = r.id[e4];

    Instance inst;
    inst.graph = std::move(r.graph);
    auto& d = inst.descriptor;
    d.family = Family::TrapChainD3;
    d.params = {{"k", k}, {"perfect", perfect ? 1 : 0}};
    d.designated = Algorithm::KarpSipser;
    const std::size_t extra = perfect ? 4 : 2;
    d.expected_alg_size = 6 * static_cast<std::size_t>(k) + extra;
    d.expected_opt_size = 8 * static_cast<std::size_t>(k) + extra;
    return {std::move(inst), std::move(lay)};
}

// tail_padding adds nodes joined to e1 and e3; the game adversary uses them
// as extra edge targets for the last trap when delta is large.
inline std::pair<Instance, TrapLayout> gen_trap_chain_with_layout(int delta, int k, bool perfect,
                                                                  int tail_padding) {
    if (delta == 3) return gen_trap_chain_d3_with_layout(k, perfect);
    if (tail_padding < 0 || tail_padding > delta - 3)
        fail(ErrorKind::BadParams, "tail padding out of range");
    if (delta < 3) fail(ErrorKind::BadParams, "trap chain needs delta >= 3");
    if (k < 1) fail(ErrorKind::BadParams, "trap chain needs k >= 1");
    const int lambda = delta - 4;
    detail::LabeledBuilder b;
    std::vector<detail::TrapNodes> traps(k);
    // Left: y_1..y_lambda, p1, d1 per trap. Right: x_1..x_lambda, c1, q1.
    for (auto& t : traps) {
        for (int j = 0; j < lambda; ++j) {
            t.y.push_back(b.first());
            t.x.push_back(b.first());
        }
        t.p1 = b.first();
        t.c1 = b.first();
        t.d1 = b.first();
        t.q1 = b.first();
    }
    std::vector<detail::H> head;
    if (perfect) {
        for (int i = 0; i < 4; ++i) head.push_back(b.later());
    } else {
        head.push_back(b.later());
    }
    for (auto& t : traps) {
        for (auto* h : {&t.c2, &t.c3, &t.c4, &t.p2, &t.d2, &t.d3, &t.d4, &t.q2}) *h = b.later();
        for (int j = 0; j < lambda; ++j) {
            t.w.push_back(b.later());
            t.z.push_back(b.later());
        }
    }
    auto e1 = b.later(), e2 = b.later(), e3 = b.later(), e4 = b.later();
    std::vector<detail::H> pad;
    for (int i = 0; i < tail_padding; ++i) pad.push_back(b.later());
    b.pin(traps[0].p1, Side::Left);

    for (int i = 0; i < k; ++i) {
        auto& t = traps[i];
        detail::cycle4(b, t.c1, t.c2, t.c3, t.c4);
        b.edge(t.c1, t.p1);
        b.edge(t.p1, t.p2);
        detail::cycle4(b, t.d1, t.d2, t.d3, t.d4);
        b.edge(t.d1, t.q1);
        b.edge(t.q1, t.q2);
        b.edge(t.p2, t.d1);
        b.edge(t.p2, t.d3);
        for (int j = 0; j < lambda; ++j) {
            b.edge(t.w[j], t.x[j]);
            b.edge(t.x[j], t.y[j]);
            b.edge(t.y[j], t.z[j]);
            b.edge(t.w[j], t.c1);
            b.edge(t.w[j], t.c3);
            b.edge(t.z[j], t.d1);
            b.edge(t.z[j], t.d3);
        }
        if (i == 0) {
            if (perfect) {
                detail::cycle4(b, head[0], head[1], head[2], head[3]);
                b.edge(head[0], t.c1);
                b.edge(head[2], t.c3);
            } else {
                b.edge(head[0], t.c1);
                b.edge(head[0], t.c3);
            }
        } else {
            b.edge(traps[i - 1].q2, t.c1);
            b.edge(traps[i - 1].q2, t.c3);
        }
    }
    detail::cycle4(b, e1, e2, e3, e4);
    b.edge(traps.back().q2, e1);
    b.edge(traps.back().q2, e3);
    for (auto h : pad) {
        b.edge(h, e1);
        b.edge(h, e3);
    }

    auto r = b.build_bipartite();
    TrapLayout lay;
    for (auto h : pad) lay.padding.push_back(r.id[h]);
    for (auto& t : traps) {
        TrapLayout::Trap o{};
        for (int j = 0; j < lambda; ++j) {
            o.x.push_back(r.id[t.x[j]]);
            o.y.push_back(r.id[t.y[j]]);
            o.w.push_back(r.id[t.w[j]]);
            o.z.push_back(r.id[t.z[j]]);
        }
        o.c1 = r.id[t.c1], o.c2 = r.id[t.c2], o.c3 = r.id[t.c3], o.c4 = r.id[t.c4];
        o.p1 = r.id[t.p1], o.p2 = r.id[t.p2];
        o.d1 = r.id[t.d1], o.d2 = r.id[t.d2], o.d3 = r.id[t.d3], o.d4 = r.id[t.d4];
        o.q1 = r.id[t.q1], o.q2 = r.id[t.q2];
        lay.traps.push_back(o);
    }
    for (auto h : head) lay.head.push_back(r.id[h]);
    lay.e1 = r.id[e1], lay.e2 = r.id[e2], lay.e3 = r.id[e3], lay.e4 = r.id[e4];

    Instance inst;
    inst.graph = std::move(r.graph);
    auto& d = inst.descriptor;
    d.family = Family::TrapChain;
    d.params = {{"delta", delta}, {"k", k}, {"perfect", perfect ? 1 : 0}};
    d.designated = Algorithm::KarpSipser;
    const std::size_t extra = perfect ? 4 : 2;
    const auto kk = static_cast<std::size_t>(k);
    d.expected_alg_size = static_cast<std::size_t>(delta) * kk + extra;
    d.expected_opt_size = static_cast<std::size_t>(2 * delta - 2) * kk + extra;
    return {std::move(inst), std::move(lay)};
}

// Chain of k traps; delta == 3 gives the variant with four-node paths.
inline Instance gen_trap_chain(int delta, int k, bool perfect = false) {
    return gen_trap_chain_with_layout(delta, k, perfect).first;
}

inline Instance gen_trap_chain_d3(int k, bool perfect = false) {
    return gen_trap_chain_d3_with_layout(k, perfect).first;
}

// Builders for the pieces of the two-sided degree-three family. Shared with
// the game adversary, which commits the same gadgets one at a time.
struct UnitRoles {
    NodeId c1, c2, c3, c4, p1, p2, p3, p4;
};

struct DoubleCycleRoles {
    NodeId c[8];
};

// Unit: 4-cycle c1..c4, edge c1-p1 and path p1-p2-p3-p4.
inline std::vector<Edge> unit_edges(const UnitRoles& u) {
    return {make_edge(u.c1, u.c2), make_edge(u.c2, u.c3), make_edge(u.c3, u.c4),
            make_edge(u.c4, u.c1), make_edge(u.c1, u.p1), make_edge(u.p1, u.p2),
            make_edge(u.p2, u.p3), make_edge(u.p3, u.p4)};
}

// Two 4-cycles c1..c4 and c5..c8 joined by c2-c6 and c4-c8.
inline std::vector<Edge> double_cycle_edges(const DoubleCycleRoles& d) {
    const auto* c = d.c;
    return {make_edge(c[0], c[1]), make_edge(c[1], c[2]), make_edge(c[2], c[3]),
            make_edge(c[3], c[0]), make_edge(c[4], c[5]), make_edge(c[5], c[6]),
            make_edge(c[6], c[7]), make_edge(c[7], c[4]), make_edge(c[1], c[5]),
            make_edge(c[3], c[7])};
}

inline Instance gen_two_sided_d3(int n, int k) {
    if (n < 1 || k < 0 || k > n) fail(ErrorKind::BadParams, "need n >= 1 and 0 <= k <= n");
    if (n == 1 && k == 1)
        fail(ErrorKind::BadParams, "a single unit cannot close its own chain within degree 3");
    detail::LabeledBuilder b;
    struct U {
        detail::H c1, c2, c3, c4, p1, p2, p3, p4;
    };
    std::vector<U> units(k);
    for (auto& u : units) {
        u.p2 = b.first();
        u.p3 = b.first();
    }
    for (auto& u : units)
        for (auto* h : {&u.c1, &u.c2, &u.c3, &u.c4, &u.p1, &u.p4}) *h = b.later();
    std::vector<std::array<detail::H, 8>> comps(n - k);
    for (auto& c : comps)
        for (auto& h : c) h = b.later();

    for (int i = 0; i < k; ++i) {
        auto& u = units[i];
        detail::cycle4(b, u.c1, u.c2, u.c3, u.c4);
        b.edge(u.c1, u.p1);
        b.edge(u.p1, u.p2);
        b.edge(u.p2, u.p3);
        b.edge(u.p3, u.p4);
        if (i == 0) {
            b.edge(u.c3, u.p1);
            b.edge(u.c2, u.p2);
        } else {
            b.edge(units[i - 1].p4, u.c3);
            b.edge(units[i - 1].p4, u.p2);
        }
        if (i == k - 1 && k >= 2) {
            b.edge(u.c4, u.p4);
            b.edge(u.p1, u.p4);
        }
    }
    for (auto& c : comps) {
        detail::cycle4(b, c[0], c[1], c[2], c[3]);
        detail::cycle4(b, c[4], c[5], c[6], c[7]);
        b.edge(c[1], c[5]);
        b.edge(c[3], c[7]);
    }
    if (k == 1) {
        // The lone unit is closed through the last component instead.
        b.edge(units[0].p4, comps.back()[0]);
        b.edge(units[0].p4, comps.back()[2]);
    }
    if (k > 0) b.pin(units[0].p2, Side::Right);

    Instance inst;
    inst.graph = b.build_bipartite().graph;
    auto& d = inst.descriptor;
    d.family = Family::TwoSidedD3;
    d.params = {{"n", n}, {"k", k}};
    d.designated = Algorithm::MDS;
    const auto nn = static_cast<std::size_t>(n), kk = static_cast<std::size_t>(k);
    d.expected_opt_size = 4 * nn;
    // Every unit but the closing one loses one edge; each component is solved.
    if (k != 1) d.expected_alg_size = 4 * nn - (kk == 0 ? 0 : kk - 1);
    return inst;
}

inline Instance gen_mds_instance(int delta) {
    if (delta < 3) fail(ErrorKind::BadParams, "MDS instance needs delta >= 3");
    const int k = delta - 2;
    detail::LabeledBuilder b;
    std::vector<detail::H> ul(k), ur(k), wl(k), wr(k);
    for (int i = 0; i < k; ++i) {
        ul[i] = b.first();
        ur[i] = b.first();
    }
    auto cl = b.later(), cr = b.later();
    detail::H pl[2] = {b.later(), b.later()};
    detail::H pr[2] = {b.later(), b.later()};
    for (int i = 0; i < k; ++i) {
        wl[i] = b.later();
        wr[i] = b.later();
    }
    b.pin(cl, Side::Left);
    for (auto p : pl) b.edge(cl, p);
    for (auto p : pr) b.edge(cr, p);
    for (int i = 0; i < k; ++i) {
        b.edge(cl, wl[i]);
        b.edge(wl[i], ul[i]);
        b.edge(ul[i], ur[i]);
        b.edge(ur[i], wr[i]);
        b.edge(wr[i], cr);
    }
    Instance inst;
    inst.graph = b.build_bipartite().graph;
    auto& d = inst.descriptor;
    d.family = Family::MdsStar;
    d.params = {{"delta", delta}};
    d.designated = Algorithm::MDS;
    d.expected_alg_size = static_cast<std::size_t>(delta);
    d.expected_opt_size = static_cast<std::size_t>(2 * delta - 2);
    return inst;
}

inline Instance gen_avg_degree_instance(int n) {
    if (n < 3) fail(ErrorKind::BadParams, "average degree instance needs n >= 3");
    detail::LabeledBuilder b;
    std::vector<detail::H> u(n), v(n), w(n), x(n);
    for (int i = 0; i < n; ++i) {
        v[i] = b.first();
        w[i] = b.first();
    }
    for (int i = 0; i < n; ++i) {
        x[i] = b.later();
        u[i] = b.later();
    }
    detail::H l[2] = {b.later(), b.later()};
    detail::H r[2] = {b.later(), b.later()};
    b.pin(v[0], Side::Left);
    for (int i = 0; i < n; ++i) {
        for (auto a : l) b.edge(a, u[i]);
        b.edge(u[i], v[i]);
        b.edge(v[i], w[i]);
        b.edge(w[i], x[i]);
        for (auto a : r) b.edge(x[i], a);
    }
    Instance inst;
    inst.graph = b.build_bipartite().graph;
    auto& d = inst.descriptor;
    d.family = Family::AvgDegree;
    d.params = {{"n", n}};
    d.designated = Algorithm::KarpSipser;
    d.expected_alg_size = static_cast<std::size_t>(n) + 4;
    d.expected_opt_size = 2 * static_cast<std::size_t>(n) + 2;
    return inst;
}

// 4-cycle a-b-c-d with chord b-d; the chord gets the smallest key.
inline Instance gen_chorded_c4() {
    const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    Instance inst;
    inst.graph = Graph::general(4, edges);
    auto& d = inst.descriptor;
    d.family = Family::ChordedC4;
    d.designated = Algorithm::KarpSipser;
    d.expected_alg_size = 1;
    d.expected_opt_size = 2;
    return inst;
}

// Uniform cross pairs, rejecting duplicates and pairs at the degree cap,
// until the target edge count or the rejection budget is reached. The
// default target is min(nl, nr) * delta.
inline Graph gen_random_bipartite(std::size_t nl, std::size_t nr, std::uint32_t delta,
                                  std::uint64_t seed,
                                  std::optional<std::size_t> target = std::nullopt) {
    if (delta < 1) fail(ErrorKind::BadParams, "delta must be at least 1");
    Graph g = Graph::bipartite(nl, nr);
    if (nl == 0 || nr == 0) return g;
    const std::size_t goal =
        std::min(target.value_or(std::min(nl, nr) * delta), std::min(nl, nr) * delta);
    std::size_t budget = 20 * (goal + 1);
    SeededRng rng(seed);
    std::size_t placed = 0;
    while (placed < goal && budget > 0) {
        auto u = static_cast<NodeId>(rng.below(nl));
        auto v = static_cast<NodeId>(nl + rng.below(nr));
        if (g.degree(u) >= delta || g.degree(v) >= delta || g.adjacent(u, v)) {
            --budget;
            continue;
        }
        g.add_edge(u, v);
        ++placed;
    }
    return g.pristine();
}

inline Graph gen_random_general(std::size_t n, std::uint32_t delta, std::uint64_t seed,
                                std::optional<std::size_t> target = std::nullopt) {
    if (delta < 1) fail(ErrorKind::BadParams, "delta must be at least 1");
    Graph g = Graph::general(n);
    if (n < 2) return g;
    const std::size_t goal = std::min(target.value_or(n * delta / 2), n * delta / 2);
    std::size_t budget = 20 * (goal + 1);
    SeededRng rng(seed);
    std::size_t placed = 0;
    while (placed < goal && budget > 0) {
        auto u = static_cast<NodeId>(rng.below(n));
        auto v = static_cast<NodeId>(rng.below(n));
        if (u == v || g.degree(u) >= delta || g.degree(v) >= delta || g.adjacent(u, v)) {
            --budget;
            continue;
        }
        g.add_edge(u, v);
        ++placed;
    }
    return g.pristine();
}

} // namespace matchforge
