#include <catch_amalgamated.hpp>

#include <matchforge/exact.hpp>
#include <matchforge/heuristics.hpp>
#include <matchforge/instances.hpp>

#include "oracles.hpp"

using namespace matchforge;

namespace {

Graph k33() {
    std::vector<Edge> e;
    for (NodeId a = 0; a < 3; ++a)
        for (NodeId b = 3; b < 6; ++b) e.push_back({a, b});
    return Graph::bipartite(3, 3, e);
}

void require_valid(const Graph& g, const Matching& m) {
    REQUIRE_NOTHROW(validate_matching(g, m));
    for (auto [u, v] : m.edges()) REQUIRE(g.adjacent(u, v));
}

} // namespace

TEST_CASE("bipartite matcher on fixtures") {
    CHECK(max_matching_bipartite(k33()).size() == 3);
    auto p4 = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    CHECK(max_matching_bipartite(p4).size() == 2);
    CHECK(max_matching_bipartite(Graph::bipartite(3, 0)).size() == 0);

    auto trap = gen_trap_chain(4, 5).graph;
    auto m = max_matching_bipartite(trap);
    require_valid(trap, m);
    CHECK(m.size() == 32);
    CHECK(static_cast<int>(m.size()) == oracle::bipartite_max_matching(trap));

    CHECK_THROWS_AS(max_matching_bipartite(gen_chorded_c4().graph), Error);
}

TEST_CASE("brute force on fixtures") {
    for (auto mode : {BruteForceMode::SubsetEnumeration, BruteForceMode::AugmentingSearch}) {
        CHECK(max_matching_brute_force(gen_chorded_c4().graph, mode).size() == 2);
        auto c5 = Graph::general(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
        CHECK(max_matching_brute_force(c5, mode).size() == 2);
        CHECK(max_matching_brute_force(gen_mds_instance(3).graph, mode).size() == 4);
        auto trap = gen_trap_chain(4, 2).graph;
        CHECK_THROWS_AS(max_matching_brute_force(trap, mode), Error);
    }
    try {
        max_matching_brute_force(gen_trap_chain(4, 2).graph);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("brute force only looks at the reduced graph") {
    auto trap = gen_trap_chain(4, 2).graph;
    auto run = run_heuristic(Algorithm::Greedy, trap);
    // Leave a small live remainder, then compare with an oracle on it.
    for (std::size_t i = 0; i + 3 < run.trace.size(); ++i) trap.reduce_by_pick(run.trace[i].u, run.trace[i].v);
    REQUIRE(trap.alive_edge_count() <= brute_force_edge_limit);
    std::vector<std::pair<int, int>> alive;
    std::map<NodeId, int> index;
    for (auto [u, v] : trap.alive_edges())
        for (NodeId x : {u, v}) index.emplace(x, static_cast<int>(index.size()));
    for (auto [u, v] : trap.alive_edges()) alive.emplace_back(index[u], index[v]);
    const int expected = oracle::max_matching_size(oracle::adjacency(static_cast<int>(index.size()), alive));
    CHECK(static_cast<int>(max_matching_brute_force(trap).size()) == expected);
    CHECK(static_cast<int>(max_matching_bipartite(trap).size()) == expected);
}

TEST_CASE("oracles agree on random small graphs") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const std::size_t nl = 1 + seed % 6, nr = 1 + (seed / 6) % 6;
        auto g = gen_random_bipartite(nl, nr, 1 + seed % 4, seed);
        if (g.edge_count() > brute_force_edge_limit) continue;
        const auto hk = max_matching_bipartite(g);
        require_valid(g, hk);
        const auto subsets = max_matching_brute_force(g, BruteForceMode::SubsetEnumeration);
        const auto augment = max_matching_brute_force(g, BruteForceMode::AugmentingSearch);
        require_valid(g, subsets);
        require_valid(g, augment);
        const int ref = oracle::max_matching_size(oracle::adjacency(g));
        REQUIRE(static_cast<int>(hk.size()) == ref);
        REQUIRE(static_cast<int>(subsets.size()) == ref);
        REQUIRE(static_cast<int>(augment.size()) == ref);
        REQUIRE(oracle::bipartite_max_matching(g) == ref);
    }
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto g = gen_random_general(4 + seed % 8, 3, seed, 4 + seed % 12);
        const int ref = oracle::max_matching_size(oracle::adjacency(g));
        REQUIRE(static_cast<int>(max_matching_brute_force(g, BruteForceMode::SubsetEnumeration).size()) == ref);
        REQUIRE(static_cast<int>(max_matching_brute_force(g, BruteForceMode::AugmentingSearch).size()) == ref);
        REQUIRE(static_cast<int>(max_matching(g).size()) == ref);
    }
}

TEST_CASE("is_maximum") {
    auto p4 = Graph::bipartite(2, 2, std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
    CHECK_FALSE(is_maximum(p4, matching_from_edges(4, std::vector<Edge>{{1, 2}})));
    auto path = find_augmenting_path(p4, matching_from_edges(4, std::vector<Edge>{{1, 2}}));
    REQUIRE(path);
    CHECK(path->size() == 4);

    auto k = k33();
    CHECK(is_maximum(k, matching_from_edges(6, std::vector<Edge>{{0, 3}, {1, 4}, {2, 5}})));
    CHECK(is_maximum(k, matching_from_edges(6, std::vector<Edge>{{0, 5}, {1, 3}, {2, 4}})));

    for (int k2 : {1, 2, 3}) {
        auto trap = gen_trap_chain(4, k2).graph;
        CHECK_FALSE(is_maximum(trap, run_heuristic(Algorithm::KarpSipser, trap).matching));
    }
    CHECK_THROWS_AS(is_maximum(p4, matching_from_edges(4, std::vector<Edge>{{0, 1}})), Error);

    auto c5 = Graph::general(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK_FALSE(is_maximum(c5, matching_from_edges(5, std::vector<Edge>{{1, 2}})));
    CHECK(is_maximum(c5, matching_from_edges(5, std::vector<Edge>{{1, 2}, {3, 4}})));
}

TEST_CASE("every heuristic is within half of the optimum") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto g = gen_random_bipartite(20, 18, 2 + seed % 4, seed);
        const auto opt = max_matching(g).size();
        for (auto a : all_algorithms) {
            auto m = run_heuristic(a, g, {TieBreakPolicy::seeded(seed), NeighborRule::Arbitrary, false}).matching;
            REQUIRE(2 * m.size() >= opt);
            REQUIRE(m.size() <= opt);
        }
    }
}
