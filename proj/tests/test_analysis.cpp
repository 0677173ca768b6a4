#include <catch_amalgamated.hpp>

#include <matchforge/analysis.hpp>
#include <matchforge/instances.hpp>

#include "oracles.hpp"

using namespace matchforge;

namespace {

Matching pairs(std::size_t n, std::vector<Edge> e) { return matching_from_edges(n, e); }

void check_conservation(const Graph& g, const Matching& m, const Matching& ms) {
    auto d = decompose(g, m, ms);
    std::size_t w = 0, ws = 0;
    for (const auto& c : d.components) {
        w += c.w;
        ws += c.w_star;
        if (c.kind == ComponentKind::AugmentingPath) {
            REQUIRE(c.w_star == c.w + 1);
            REQUIRE_FALSE(m.covered(c.nodes.front()));
            REQUIRE_FALSE(m.covered(c.nodes.back()));
            REQUIRE(c.local_ratio() >= Rational(1, 2));
            for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i) {
                const bool star_edge = i % 2 == 0;
                auto& mm = star_edge ? d.normalized_opt : m;
                REQUIRE(mm.contains(c.nodes[i], c.nodes[i + 1]));
            }
        } else {
            REQUIRE(c.w == 1);
            REQUIRE(c.w_star == 1);
            REQUIRE(m.contains(c.nodes[0], c.nodes[1]));
            REQUIRE(d.normalized_opt.contains(c.nodes[0], c.nodes[1]));
        }
    }
    REQUIRE(w == m.size());
    REQUIRE(ws == ms.size());
    REQUIRE(d.normalized_opt.size() == ms.size());
    REQUIRE_NOTHROW(validate_matching(g, d.normalized_opt));
    if (g.is_bipartite()) REQUIRE(is_maximum(g, d.normalized_opt));
}

} // namespace

TEST_CASE("decompose: small fixtures") {
    SECTION("P3 normalizes to a singleton") {
        auto g = Graph::bipartite(2, 1, std::vector<Edge>{{0, 2}, {1, 2}});
        auto d = decompose(g, pairs(3, {{0, 2}}), pairs(3, {{1, 2}}));
        REQUIRE(d.components.size() == 1);
        CHECK(d.components[0].kind == ComponentKind::Singleton);
        CHECK(d.components[0].nodes == std::vector<NodeId>{0, 2});
        CHECK(d.normalized_opt.contains(0, 2));
    }
    SECTION("P4 gives one augmenting path") {
        // a=0, b=2, c=1, d=3: path 0-2-1-3.
        auto g = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
        auto d = decompose(g, pairs(4, {{1, 2}}), pairs(4, {{0, 2}, {1, 3}}));
        REQUIRE(d.components.size() == 1);
        const auto& c = d.components[0];
        CHECK(c.kind == ComponentKind::AugmentingPath);
        CHECK(c.w == 1);
        CHECK(c.w_star == 2);
        CHECK(c.local_ratio() == Rational(1, 2));
        CHECK(c.endpoints() == std::pair<NodeId, NodeId>{0, 3});
        CHECK(c.nodes == std::vector<NodeId>{0, 2, 1, 3});
    }
    SECTION("C4 with opposite perfect matchings") {
        auto g = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
        auto d = decompose(g, pairs(4, {{0, 2}, {1, 3}}), pairs(4, {{0, 3}, {1, 2}}));
        REQUIRE(d.components.size() == 2);
        for (const auto& c : d.components) CHECK(c.kind == ComponentKind::Singleton);
        CHECK(d.normalized_opt == pairs(4, {{0, 2}, {1, 3}}));
    }
    SECTION("errors") {
        auto g = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
        CHECK_THROWS_AS(decompose(g, pairs(4, {{0, 2}, {1, 3}}), pairs(4, {{1, 2}})), Error);
        CHECK_THROWS_AS(decompose(g, pairs(4, {{0, 3}}), pairs(4, {{0, 2}, {1, 3}})), Error);
        try {
            ratio_report(g, pairs(4, {{1, 2}}), pairs(4, {{1, 2}}));
            FAIL("expected NotMaximum");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotMaximum);
        }
    }
}

TEST_CASE("decompose: conservation on heuristic runs") {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        auto g = gen_random_bipartite(14, 14, 2 + s % 4, s);
        const auto opt = max_matching(g);
        for (auto a : all_algorithms)
            check_conservation(g, run_heuristic(a, g, {TieBreakPolicy::seeded(s)}).matching, opt);
    }
    for (auto inst : {gen_trap_chain(4, 3), gen_trap_chain_d3(3), gen_two_sided_d3(4, 3), gen_mds_instance(6),
                      gen_avg_degree_instance(8)})
        for (auto a : all_algorithms)
            check_conservation(inst.graph, run_heuristic(a, inst.graph).matching, max_matching(inst.graph));
}

TEST_CASE("ratio reports") {
    auto trap = gen_trap_chain(4, 10).graph;
    auto r = ratio_report(trap, run_heuristic(Algorithm::KarpSipser, trap).matching, max_matching(trap));
    CHECK(r.alg_size == 42);
    CHECK(r.opt_size == 62);
    CHECK(r.ratio == Rational(42, 62));
    CHECK(r.bound == Rational(2, 3));
    CHECK(r.delta == 4);
    CHECK(r.bound_holds);

    auto mds = gen_mds_instance(4).graph;
    auto rm = ratio_report(mds, run_heuristic(Algorithm::MDS, mds).matching, max_matching(mds));
    CHECK(rm.ratio == Rational(4, 6));
    CHECK(rm.ratio == rm.bound);
    CHECK(rm.bound_holds);

    auto opt = max_matching(trap);
    auto perfect = ratio_report(trap, opt, opt);
    CHECK(perfect.ratio == Rational(1));
    CHECK(perfect.bound_holds);

    CHECK(matching_ratio(0, 0) == Rational(1));
    CHECK(karp_sipser_bound(1) == Rational(1));
    CHECK(karp_sipser_bound(3) == Rational(3, 4));
    CHECK(karp_sipser_bound(6) == Rational(6, 10));

    auto c4 = gen_chorded_c4().graph;
    auto rc = ratio_report(c4, run_heuristic(Algorithm::KarpSipser, c4).matching, max_matching(c4));
    CHECK(rc.ratio == Rational(1, 2));
    CHECK_FALSE(rc.bound_holds);

    CHECK(csv_header() ==
          "instance,algorithm,policy,alg_size,opt_size,ratio_num,ratio_den,delta,bound_num,bound_den,bound_holds");
    CHECK(csv_row("trap;delta=4;k=10;perfect=0", "karpsipser", "lex", r) ==
          "trap;delta=4;k=10;perfect=0,karpsipser,lex,42,62,21,31,4,2,3,true");
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) < Rational(3, 4));
    CHECK(Rational(42, 62).str() == "21/31");
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("check_maximal") {
    auto k33 = Graph::bipartite(3, 3, std::vector<Edge>{{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                                         {2, 3}, {2, 4}, {2, 5}});
    CHECK_FALSE(check_maximal(k33, Matching(6)));
    auto p4 = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    CHECK(check_maximal(p4, pairs(4, {{1, 2}})));
    CHECK_THROWS_AS(check_maximal(p4, pairs(4, {{0, 1}})), Error);
    for (auto a : all_algorithms) CHECK(check_maximal(k33, run_heuristic(a, k33).matching));
}

TEST_CASE("KarpSipser trace checker") {
    std::vector<Graph> graphs;
    for (std::uint64_t s = 1; s <= 80; ++s) graphs.push_back(gen_random_bipartite(10 + s % 15, 12, 2 + s % 4, s));
    for (int delta = 4; delta <= 6; ++delta) graphs.push_back(gen_trap_chain(delta, 3).graph);
    graphs.push_back(gen_trap_chain_d3(3).graph);
    graphs.push_back(gen_trap_chain(4, 3, true).graph);
    graphs.push_back(gen_two_sided_d3(5, 5).graph);
    graphs.push_back(gen_avg_degree_instance(10).graph);
    for (const auto& g : graphs) {
        const auto opt = max_matching(g);
        for (std::uint64_t s = 0; s <= 5; ++s) {
            auto pol = s == 0 ? TieBreakPolicy::lexicographic() : TieBreakPolicy::seeded(s);
            auto run = run_heuristic(Algorithm::KarpSipser, g, {pol});
            REQUIRE(check_karp_sipser_trace(g, run.trace, opt).empty());
        }
    }

    // A pick without a degree-1 endpoint while a leaf exists.
    auto p4 = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    Trace bad{{1, 2, 2, 2, 1, 3}};
    try {
        check_karp_sipser_trace(p4, bad, max_matching(p4));
        FAIL("expected TraceMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TraceMismatch);
    }
    Trace wrong_degree{{0, 2, 1, 1, 1, 3}, {1, 3, 1, 1, 1, 2}};
    CHECK_THROWS_AS(check_karp_sipser_trace(p4, wrong_degree, max_matching(p4)), Error);
    Trace short_trace{{0, 2, 1, 2, 1, 3}};
    CHECK_THROWS_AS(check_karp_sipser_trace(p4, short_trace, max_matching(p4)), Error);

    auto c4 = gen_chorded_c4().graph;
    try {
        check_karp_sipser_trace(c4, run_heuristic(Algorithm::KarpSipser, c4).trace, max_matching(c4));
        FAIL("expected NotBipartite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotBipartite);
    }
}

TEST_CASE("a middle pick on P4 leaves an augmenting path") {
    auto p4 = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    auto m = pairs(4, {{1, 2}});
    auto d = decompose(p4, m, max_matching(p4));
    REQUIRE(d.components.size() == 1);
    CHECK(d.components[0].kind == ComponentKind::AugmentingPath);
}
