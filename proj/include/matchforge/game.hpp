#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "exact.hpp"
#include "graph.hpp"
#include "instances.hpp"
#include "io.hpp"

namespace matchforge {

// One-sided items carry the degree of u only; two-sided items carry both.
enum class Arity { OneSided, TwoSided };

inline std::string_view to_string(Arity a) { return a == Arity::OneSided ? "one-sided" : "two-sided"; }

// Degree pattern of a data item. dv is 0 for one-sided items.
struct Pattern {
    std::uint32_t du = 0;
    std::uint32_t dv = 0;

    friend auto operator<=>(const Pattern&, const Pattern&) = default;

    std::string str() const {
        return dv == 0 ? std::to_string(du) : std::to_string(du) + "," + std::to_string(dv);
    }
};

struct GameRound {
    Pattern pattern;
    NodeId u = 0;
    NodeId v = 0;
    // Picked by the engine to clear a finished component, not by the policy.
    bool forced = false;
    // Patterns the policy chose from; empty for forced rounds.
    std::vector<Pattern> candidates;
    // Edges the adversary committed while realizing this round.
    std::vector<Edge> inserted;
};

// What a policy may look at when ordering patterns.
struct PolicyView {
    std::size_t announced_nodes = 0;
    std::span<const GameRound> history;
};

// An adaptive priority order over degree patterns. Lower rank is served
// first; equal ranks fall back to ascending pattern, so the order is total.
class Policy {
public:
    using RankFn = std::function<std::int64_t(Pattern, const PolicyView&)>;

    Policy(std::string name, Arity arity, RankFn rank)
        : name_(std::move(name)), arity_(arity), rank_(std::move(rank)) {}

    const std::string& name() const { return name_; }
    Arity arity() const { return arity_; }

    std::int64_t rank(Pattern p, const PolicyView& view) const { return rank_(p, view); }

    bool prefers(Pattern a, Pattern b, const PolicyView& view) const {
        auto ra = rank(a, view), rb = rank(b, view);
        return ra != rb ? ra < rb : a < b;
    }

    Pattern choose(std::span<const Pattern> candidates, const PolicyView& view) const {
        if (candidates.empty()) throw std::logic_error("policy asked to choose from nothing");
        Pattern best = candidates.front();
        for (auto p : candidates.subspan(1))
            if (prefers(p, best, view)) best = p;
        return best;
    }

private:
    std::string name_;
    Arity arity_;
    RankFn rank_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

namespace policies {

inline Policy karp_sipser() {
    return {"karpsipser", Arity::OneSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return p.du == 1 ? 0 : 1; }};
}
inline Policy greedy() {
    return {"greedy", Arity::OneSided, [](Pattern, const PolicyView&) -> std::int64_t { return 0; }};
}
inline Policy min_greedy() {
    return {"mingreedy", Arity::OneSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return p.du; }};
}
inline Policy max_degree() {
    return {"maxdeg", Arity::OneSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return -std::int64_t(p.du); }};
}
inline Policy mds() {
    return {"mds", Arity::TwoSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return p.du + p.dv; }};
}
// Ascending (smaller degree, larger degree).
inline Policy min_degree_pair() {
    return {"mindegpair", Arity::TwoSided, [](Pattern p, const PolicyView&) -> std::int64_t {
                return std::int64_t(std::min(p.du, p.dv)) * 1024 + std::max(p.du, p.dv);
            }};
}
inline Policy max_sum() {
    return {"maxsum", Arity::TwoSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return -std::int64_t(p.du + p.dv); }};
}
// Degree-1 node first on either side, anything else after.
inline Policy karp_sipser_two_sided() {
    return {"karpsipser2", Arity::TwoSided, [](Pattern p, const PolicyView&) -> std::int64_t {
                return std::min(p.du, p.dv) == 1 ? 0 : 1;
            }};
}
// A fresh pseudo-random order in every round.
inline Policy random(Arity arity, std::uint64_t seed) {
    return {"random:" + std::to_string(seed), arity,
            [seed](Pattern p, const PolicyView& v) -> std::int64_t {
                std::uint64_t h = detail::splitmix64(seed);
                h = detail::splitmix64(h ^ v.history.size());
                h = detail::splitmix64(h ^ (std::uint64_t(p.du) << 32 | p.dv));
                return static_cast<std::int64_t>(h >> 1);
            }};
}

inline std::vector<Policy> one_sided() { return {karp_sipser(), greedy(), min_greedy(), max_degree()}; }
inline std::vector<Policy> two_sided() {
    return {mds(), min_degree_pair(), max_sum(), karp_sipser_two_sided()};
}

// Accepts the names above plus "random:<seed>" (arity from the adversary).
inline std::optional<Policy> by_name(std::string_view name, Arity arity) {
    if (name.rfind("random", 0) == 0) {
        std::uint64_t seed = 0;
        if (name.size() > 6) {
            if (name[6] != ':') return std::nullopt;
            try {
                seed = std::stoull(std::string(name.substr(7)));
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        return random(arity, seed);
    }
    for (auto& p : arity == Arity::OneSided ? one_sided() : two_sided())
        if (p.name() == name) return p;
    for (auto& p : arity == Arity::OneSided ? two_sided() : one_sided())
        if (p.name() == name) return p;
    return std::nullopt;
}

} // namespace policies

// The adversary side of the game: it announces a node count, offers degree
// patterns it can realize, and commits edges of its graph as it goes.
class Adversary {
public:
    struct Realization {
        NodeId u;
        NodeId v;
        std::vector<Edge> inserted;
    };

    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    virtual Arity arity() const = 0;
    virtual std::uint32_t degree_cap() const = 0;
    // Committed graph; the engine reduces it as picks happen.
    virtual Graph& graph() = 0;
    virtual bool finished() const = 0;
    virtual std::vector<Pattern> offered() const = 0;
    virtual Realization realize(Pattern p) = 0;
    // True if u will take part in a future adversary round.
    virtual bool pending(NodeId u) const = 0;
};

namespace detail {

inline std::vector<NodeId> rotated(std::vector<NodeId> v, std::size_t by) {
    std::sort(v.begin(), v.end());
    if (!v.empty()) std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(by % v.size()), v.end());
    return v;
}

// Plays the trap chain. Each round is one of the crossed edges of a trap; the
// requested degree is met by joining u to some of the listed targets.
class TrapAdversary final : public Adversary {
public:
    TrapAdversary(int delta, int k, bool perfect) : delta_(static_cast<std::uint32_t>(delta)) {
        const int padding = delta >= 7 ? delta - 6 : 0;
        auto [inst, lay] = gen_trap_chain_with_layout(delta, k, perfect, padding);
        g_ = std::move(inst.graph);
        pending_.assign(g_.node_count(), false);
        for (std::size_t i = 0; i < lay.traps.size(); ++i) {
            const auto& t = lay.traps[i];
            if (delta == 3) {
                plan_.push_back({t.p2, t.p3, {}});
                plan_.push_back({t.q2, t.q3, {}});
                continue;
            }
            const bool last = i + 1 == lay.traps.size();
            for (std::size_t j = 0; j < t.x.size(); ++j) {
                std::vector<NodeId> tg{t.c2, t.c4, t.q2};
                for (std::size_t l = 0; l < t.w.size(); ++l)
                    if (l != j) tg.push_back(t.w[l]);
                plan_.push_back({t.x[j], t.y[j], tg});
            }
            std::vector<NodeId> tp{t.d2, t.d4};
            tp.insert(tp.end(), t.z.begin(), t.z.end());
            plan_.push_back({t.p1, t.c1, tp});
            std::vector<NodeId> tq;
            if (last) {
                tq = {t.d3, lay.e2, lay.e4};
                tq.insert(tq.end(), lay.padding.begin(), lay.padding.end());
            } else {
                const auto& nx = lay.traps[i + 1];
                tq = {nx.c2, nx.c4};
                tq.insert(tq.end(), nx.w.begin(), nx.w.end());
            }
            plan_.push_back({t.q1, t.d1, tq});
        }
        for (const auto& it : plan_) pending_[it.a] = pending_[it.b] = true;
    }

    std::string name() const override { return "trap"; }
    Arity arity() const override { return Arity::OneSided; }
    std::uint32_t degree_cap() const override { return delta_; }
    Graph& graph() override { return g_; }
    bool finished() const override { return cursor_ == plan_.size(); }

    std::vector<Pattern> offered() const override {
        std::vector<Pattern> out;
        for (std::uint32_t d = 2; d <= delta_; ++d) out.push_back({d, 0});
        return out;
    }

    Realization realize(Pattern p) override {
        const auto& it = plan_.at(cursor_);
        const std::size_t index = cursor_++;
        pending_[it.a] = pending_[it.b] = false;
        Realization r{it.a, it.b, {}};
        const auto base = g_.degree(it.a);
        if (p.du >= base && p.du - base <= it.targets.size()) {
            auto tg = rotated(it.targets, index);
            for (std::uint32_t i = 0; i < p.du - base; ++i) {
                g_.add_edge(it.a, tg[i]);
                r.inserted.push_back(make_edge(it.a, tg[i]));
            }
            return r;
        }
        if (g_.degree(it.b) == p.du) return {it.b, it.a, {}};
        throw std::logic_error("trap adversary cannot realize degree " + p.str());
    }

    bool pending(NodeId u) const override { return pending_[u]; }

private:
    struct Planned {
        NodeId a;
        NodeId b;
        std::vector<NodeId> targets;
    };

    std::uint32_t delta_;
    Graph g_;
    std::vector<Planned> plan_;
    std::vector<bool> pending_;
    std::size_t cursor_ = 0;
};

// Degree-three two-sided adversary: commits one 8-node gadget per round,
// either a path-and-cycle unit chained to the previous one or a pair of
// joined 4-cycles, depending on the requested pattern.
class TwoSidedD3Adversary final : public Adversary {
public:
    explicit TwoSidedD3Adversary(int n)
        : n_(static_cast<std::size_t>(n)), g_(Graph::bipartite(4 * n_, 4 * n_)) {}

    std::string name() const override { return "twosided3"; }
    Arity arity() const override { return Arity::TwoSided; }
    std::uint32_t degree_cap() const override { return 3; }
    Graph& graph() override { return g_; }
    bool finished() const override { return used_ == n_; }
    std::vector<Pattern> offered() const override { return {{2, 3}, {3, 2}, {3, 3}}; }
    bool pending(NodeId) const override { return false; }

    Realization realize(Pattern p) override {
        const bool last = used_ + 1 == n_;
        ++used_;
        inserted_.clear();
        if (p == Pattern{3, 3}) {
            auto c = component(last ? open_p4_ : std::nullopt);
            if (last) open_p4_.reset();
            return {c[1], c[5], inserted_};
        }
        if (p != Pattern{2, 3} && p != Pattern{3, 2})
            throw std::logic_error("pattern " + p.str() + " is not offered");
        if (!last || open_p4_) {
            auto u = unit(last);
            return p.du == 3 ? Realization{u.p2, u.p3, inserted_} : Realization{u.p3, u.p2, inserted_};
        }
        auto c = component(std::nullopt);
        return p.du == 3 ? Realization{c[1], c[0], inserted_} : Realization{c[0], c[1], inserted_};
    }

private:
    NodeId take(Side s) {
        return s == Side::Left ? static_cast<NodeId>(next_left_++)
                               : static_cast<NodeId>(4 * n_ + next_right_++);
    }

    void link(NodeId a, NodeId b) {
        g_.add_edge(a, b);
        inserted_.push_back(make_edge(a, b));
    }

    UnitRoles unit(bool closing) {
        const Side a = open_p4_ ? opposite(g_.side(*open_p4_)) : Side::Right;
        const Side b = opposite(a);
        UnitRoles u{};
        u.c1 = take(a), u.c3 = take(a), u.p2 = take(a), u.p4 = take(a);
        u.c2 = take(b), u.c4 = take(b), u.p1 = take(b), u.p3 = take(b);
        for (auto [x, y] : unit_edges(u)) link(x, y);
        if (open_p4_) {
            link(*open_p4_, u.c3);
            link(*open_p4_, u.p2);
        } else {
            link(u.c3, u.p1);
            link(u.c2, u.p2);
        }
        if (closing) {
            link(u.c4, u.p4);
            link(u.p1, u.p4);
            open_p4_.reset();
        } else {
            open_p4_ = u.p4;
        }
        return u;
    }

    // Two joined 4-cycles; attach_to, if given, is joined to c1 and c3.
    std::array<NodeId, 8> component(std::optional<NodeId> attach_to) {
        const Side x = attach_to ? opposite(g_.side(*attach_to)) : Side::Left;
        const Side y = opposite(x);
        DoubleCycleRoles d{};
        // c1, c3, c6, c8 on one side; c2, c4, c5, c7 on the other.
        for (int i : {0, 2, 5, 7}) d.c[i] = take(x);
        for (int i : {1, 3, 4, 6}) d.c[i] = take(y);
        for (auto [a, b] : double_cycle_edges(d)) link(a, b);
        if (attach_to) {
            link(*attach_to, d.c[0]);
            link(*attach_to, d.c[2]);
        }
        std::array<NodeId, 8> out;
        std::copy(std::begin(d.c), std::end(d.c), out.begin());
        return out;
    }

    std::size_t n_;
    Graph g_;
    std::size_t used_ = 0;
    std::size_t next_left_ = 0;
    std::size_t next_right_ = 0;
    std::optional<NodeId> open_p4_;
    std::vector<Edge> inserted_;
};

// General two-sided adversary: delta-3 middle edges u_i-v_i, each raised to
// the requested degrees by edges into the gray part, which is left over at
// the end and holds a matching of size four.
class GeneralTwoSidedAdversary final : public Adversary {
public:
    explicit GeneralTwoSidedAdversary(int delta) : delta_(static_cast<std::uint32_t>(delta)) {
        const int m = delta - 3;
        LabeledBuilder b;
        std::vector<H> a(m), u(m), v(m), bb(m);
        for (int i = 0; i < m; ++i) {
            u[i] = b.first();
            v[i] = b.first();
        }
        for (int i = 0; i < m; ++i) {
            a[i] = b.later();
            bb[i] = b.later();
        }
        auto na = b.later(), na2 = b.later(), nb = b.later(), nb2 = b.later();
        auto g1 = b.later(), g2 = b.later(), g3 = b.later(), g4 = b.later();
        b.pin(g1, Side::Left);
        for (int i = 0; i < m; ++i) {
            b.edge(a[i], u[i]);
            b.edge(u[i], v[i]);
            b.edge(v[i], bb[i]);
            b.edge(a[i], g1);
            b.edge(a[i], g2);
            b.edge(bb[i], g3);
            b.edge(bb[i], g4);
        }
        b.edge(na, g1);
        b.edge(na, g2);
        b.edge(na2, g1);
        b.edge(na2, g2);
        b.edge(g2, g3);
        b.edge(nb, g3);
        b.edge(nb, g4);
        b.edge(nb2, g3);
        b.edge(nb2, g4);
        auto r = b.build_bipartite();
        g_ = std::move(r.graph);
        pending_.assign(g_.node_count(), false);
        for (int i = 0; i < m; ++i) {
            Planned p{r.id[u[i]], r.id[v[i]], {r.id[na], r.id[na2]}, {r.id[nb], r.id[nb2]}};
            for (int j = 0; j < m; ++j)
                if (j != i) {
                    p.tu.push_back(r.id[a[j]]);
                    p.tv.push_back(r.id[bb[j]]);
                }
            pending_[p.u] = pending_[p.v] = true;
            plan_.push_back(std::move(p));
        }
    }

    std::string name() const override { return "general2s"; }
    Arity arity() const override { return Arity::TwoSided; }
    std::uint32_t degree_cap() const override { return delta_; }
    Graph& graph() override { return g_; }
    bool finished() const override { return cursor_ == plan_.size(); }
    bool pending(NodeId u) const override { return pending_[u]; }

    std::vector<Pattern> offered() const override {
        std::vector<Pattern> out;
        for (std::uint32_t a = 2; a <= delta_; ++a)
            for (std::uint32_t b = 2; b <= delta_; ++b) out.push_back({a, b});
        return out;
    }

    Realization realize(Pattern p) override {
        const auto& it = plan_.at(cursor_);
        const std::size_t index = cursor_++;
        pending_[it.u] = pending_[it.v] = false;
        if (p.du < 2 || p.dv < 2 || p.du - 2 > it.tu.size() || p.dv - 2 > it.tv.size())
            throw std::logic_error("pattern " + p.str() + " is not offered");
        Realization r{it.u, it.v, {}};
        auto tu = rotated(it.tu, index), tv = rotated(it.tv, index);
        for (std::uint32_t i = 0; i + 2 < p.du; ++i) {
            g_.add_edge(it.u, tu[i]);
            r.inserted.push_back(make_edge(it.u, tu[i]));
        }
        for (std::uint32_t i = 0; i + 2 < p.dv; ++i) {
            g_.add_edge(it.v, tv[i]);
            r.inserted.push_back(make_edge(it.v, tv[i]));
        }
        return r;
    }

private:
    struct Planned {
        NodeId u, v;
        std::vector<NodeId> tu, tv;
    };

    std::uint32_t delta_;
    Graph g_;
    std::vector<Planned> plan_;
    std::vector<bool> pending_;
    std::size_t cursor_ = 0;
};

} // namespace detail

struct TrapAdversaryParams {
    int delta;
    int k;
    bool perfect = false;
};
struct TwoSidedD3Params {
    int n;
};
struct GeneralTwoSidedParams {
    int delta;
};

using AdversarySpec = std::variant<TrapAdversaryParams, TwoSidedD3Params, GeneralTwoSidedParams>;

inline AdversarySpec trap_adversary(int delta, int k, bool perfect = false) {
    if (delta < 3 || k < 1) fail(ErrorKind::BadParams, "trap adversary needs delta >= 3 and k >= 1");
    return TrapAdversaryParams{delta, k, perfect};
}

inline AdversarySpec two_sided_d3_adversary(int n) {
    if (n < 2) fail(ErrorKind::BadParams, "two-sided adversary needs n >= 2");
    return TwoSidedD3Params{n};
}

inline AdversarySpec general_two_sided_adversary(int delta) {
    if (delta < 3) fail(ErrorKind::BadParams, "general two-sided adversary needs delta >= 3");
    return GeneralTwoSidedParams{delta};
}

inline std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec) {
    return std::visit(
        [](const auto& p) -> std::unique_ptr<Adversary> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TrapAdversaryParams>)
                return std::make_unique<detail::TrapAdversary>(p.delta, p.k, p.perfect);
            else if constexpr (std::is_same_v<T, TwoSidedD3Params>)
                return std::make_unique<detail::TwoSidedD3Adversary>(p.n);
            else
                return std::make_unique<detail::GeneralTwoSidedAdversary>(p.delta);
        },
        spec);
}

inline Arity arity_of(const AdversarySpec& spec) {
    return std::holds_alternative<TrapAdversaryParams>(spec) ? Arity::OneSided : Arity::TwoSided;
}

// Forced: a component that no future adversary round touches is cleared with
// a maximum matching right away. PolicyDriven: its items compete with the
// offered ones under the policy.
enum class CleanupMode { Forced, PolicyDriven };

struct GameTranscript {
    Arity arity = Arity::OneSided;
    std::string policy;
    std::string adversary;
    std::vector<GameRound> rounds;
    Graph final_graph;

    std::size_t announced_nodes() const { return final_graph.node_count(); }

    Matching matching() const {
        Matching m(final_graph.node_count());
        for (const auto& r : rounds) m.add(r.u, r.v);
        return m;
    }
};

namespace detail {

inline std::vector<Pattern> patterns_of_edge(const Graph& g, NodeId a, NodeId b, Arity arity) {
    if (arity == Arity::OneSided) return {{g.degree(a), 0}, {g.degree(b), 0}};
    return {{g.degree(a), g.degree(b)}, {g.degree(b), g.degree(a)}};
}

inline bool item_matches(const Graph& g, NodeId u, NodeId v, Pattern p, Arity arity) {
    if (g.degree(u) != p.du) return false;
    return arity == Arity::OneSided || g.degree(v) == p.dv;
}

// Marks nodes of alive components that contain no pending node.
inline std::vector<bool> settled_nodes(const Graph& g, const Adversary& adv) {
    std::vector<bool> settled(g.node_count(), false), seen(g.node_count(), false);
    std::vector<NodeId> comp;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (seen[s] || !g.alive(s) || g.degree(s) == 0) continue;
        comp.assign(1, s);
        seen[s] = true;
        bool open = false;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            NodeId x = comp[i];
            open = open || adv.pending(x);
            g.for_each_alive_neighbor(x, [&](NodeId y) {
                if (!seen[y]) {
                    seen[y] = true;
                    comp.push_back(y);
                }
            });
        }
        if (!open)
            for (NodeId x : comp) settled[x] = true;
    }
    return settled;
}

} // namespace detail

inline GameTranscript play(const Policy& policy, const AdversarySpec& spec,
                           CleanupMode cleanup = CleanupMode::Forced) {
    auto adv = make_adversary(spec);
    if (policy.arity() != adv->arity())
        fail(ErrorKind::ArityMismatch, "policy " + policy.name() + " is " +
                                           std::string(to_string(policy.arity())) + ", adversary is " +
                                           std::string(to_string(adv->arity())));
    const Arity arity = adv->arity();
    GameTranscript t;
    t.arity = arity;
    t.policy = policy.name();
    t.adversary = adv->name();
    Graph& g = adv->graph();
    const std::size_t announced = g.node_count();

    auto record = [&](NodeId u, NodeId v, Pattern p, bool forced, std::vector<Edge> inserted,
                      std::vector<Pattern> candidates = {}) {
        g.reduce_by_pick(u, v);
        t.rounds.push_back({p, u, v, forced, std::move(candidates), std::move(inserted)});
    };
    auto current_pattern = [&](NodeId u, NodeId v) {
        return arity == Arity::OneSided ? Pattern{g.degree(u), 0} : Pattern{g.degree(u), g.degree(v)};
    };

    while (true) {
        auto settled = detail::settled_nodes(g, *adv);
        if (cleanup == CleanupMode::Forced) {
            bool any = std::find(settled.begin(), settled.end(), true) != settled.end();
            if (any) {
                for (auto [u, v] : max_matching(g).edges())
                    if (settled[u]) record(u, v, current_pattern(u, v), true, {});
                continue;
            }
        }
        const std::vector<Pattern> offered =
            adv->finished() ? std::vector<Pattern>{} : adv->offered();
        std::vector<Pattern> cand = offered;
        if (cleanup == CleanupMode::PolicyDriven)
            for (auto [a, b] : g.alive_edges())
                if (settled[a])
                    for (auto p : detail::patterns_of_edge(g, a, b, arity)) cand.push_back(p);
        if (cand.empty()) break;
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        const Pattern choice = policy.choose(cand, PolicyView{announced, t.rounds});
        if (std::find(offered.begin(), offered.end(), choice) != offered.end()) {
            auto r = adv->realize(choice);
            if (!detail::item_matches(g, r.u, r.v, choice, arity))
                throw std::logic_error("adversary realized " + choice.str() + " with wrong degrees");
            record(r.u, r.v, choice, false, std::move(r.inserted), std::move(cand));
            continue;
        }
        // Smallest settled item carrying the chosen pattern.
        std::optional<std::pair<NodeId, NodeId>> item;
        for (auto [a, b] : g.alive_edges()) {
            if (!settled[a]) continue;
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
                if (detail::item_matches(g, x, y, choice, arity) && (!item || std::pair{x, y} < *item))
                    item = std::pair{x, y};
        }
        if (!item) throw std::logic_error("no item with pattern " + choice.str());
        record(item->first, item->second, choice, false, {}, std::move(cand));
    }
    t.final_graph = g.pristine();
    return t;
}

// Replays the transcript on its final graph: every item must be alive with
// the stated degrees, and every policy round must carry the policy's top
// pattern among those present in the reduced final graph.
inline bool verify_consistency(const Policy& policy, const GameTranscript& t) {
    if (policy.arity() != t.arity)
        fail(ErrorKind::ArityMismatch, "policy and transcript disagree on arity");
    Graph g = t.final_graph.pristine();
    const std::size_t announced = g.node_count();
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        const auto& r = t.rounds[i];
        if (r.u >= g.node_count() || r.v >= g.node_count() || !g.edge_alive(r.u, r.v)) return false;
        if (!detail::item_matches(g, r.u, r.v, r.pattern, t.arity)) return false;
        if (!r.forced) {
            std::vector<Pattern> present;
            for (auto [a, b] : g.alive_edges())
                for (auto p : detail::patterns_of_edge(g, a, b, t.arity)) present.push_back(p);
            PolicyView view{announced, std::span<const GameRound>(t.rounds.data(), i)};
            if (policy.choose(present, view) != r.pattern) return false;
        }
        g.reduce_by_pick(r.u, r.v);
    }
    return true;
}

// "<round> <pattern>[*] <u> <v> [a-b ...]" per round, '*' marking forced
// rounds, followed by the final graph.
inline std::string transcript_to_text(const GameTranscript& t) {
    std::string out = "# game policy=" + t.policy + " adversary=" + t.adversary + " arity=" +
                      (t.arity == Arity::OneSided ? "1" : "2") + "\n";
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        const auto& r = t.rounds[i];
        out += std::to_string(i + 1) + " " + r.pattern.str() + (r.forced ? "*" : "") + " " +
               std::to_string(r.u) + " " + std::to_string(r.v);
        for (auto [a, b] : r.inserted) out += " " + std::to_string(a) + "-" + std::to_string(b);
        out += "\n";
    }
    return out + graph_to_text(t.final_graph);
}

inline GameTranscript transcript_from_text(const std::string& text) {
    std::istringstream in(text);
    GameTranscript t;
    std::string line;
    std::size_t line_no = 0;
    std::optional<Arity> arity;
    std::string graph_text;
    auto bad = [&](const std::string& what) {
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# game ", 0) == 0) {
            for (auto tok : detail::split_ws(line)) {
                if (tok.rfind("policy=", 0) == 0) t.policy = std::string(tok.substr(7));
                if (tok.rfind("adversary=", 0) == 0) t.adversary = std::string(tok.substr(10));
                if (tok == "arity=1") arity = Arity::OneSided;
                if (tok == "arity=2") arity = Arity::TwoSided;
            }
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("mg ", 0) == 0) {
            graph_text = line + "\n";
            while (std::getline(in, line)) graph_text += line + "\n";
            break;
        }
        auto tok = detail::split_ws(line);
        if (tok.size() < 4) bad("expected '<round> <pattern> <u> <v>'");
        if (detail::parse_int<std::size_t>(tok[0], line_no) != t.rounds.size() + 1)
            bad("rounds out of order");
        GameRound r;
        auto pat = tok[1];
        if (!pat.empty() && pat.back() == '*') {
            r.forced = true;
            pat.remove_suffix(1);
        }
        auto comma = pat.find(',');
        Arity this_arity = comma == std::string_view::npos ? Arity::OneSided : Arity::TwoSided;
        if (arity && *arity != this_arity) bad("mixed pattern arities");
        arity = this_arity;
        r.pattern.du = detail::parse_int<std::uint32_t>(pat.substr(0, comma), line_no);
        if (comma != std::string_view::npos)
            r.pattern.dv = detail::parse_int<std::uint32_t>(pat.substr(comma + 1), line_no);
        r.u = detail::parse_int<NodeId>(tok[2], line_no);
        r.v = detail::parse_int<NodeId>(tok[3], line_no);
        for (std::size_t i = 4; i < tok.size(); ++i) {
            auto dash = tok[i].find('-');
            if (dash == std::string_view::npos) bad("expected 'a-b'");
            r.inserted.push_back(make_edge(detail::parse_int<NodeId>(tok[i].substr(0, dash), line_no),
                                           detail::parse_int<NodeId>(tok[i].substr(dash + 1), line_no)));
        }
        t.rounds.push_back(std::move(r));
    }
    if (graph_text.empty()) fail(ErrorKind::ParseError, "transcript has no final graph");
    t.arity = arity.value_or(Arity::OneSided);
    t.final_graph = graph_from_text(graph_text);
    return t;
}

} // namespace matchforge
