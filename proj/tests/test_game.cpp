#include <catch_amalgamated.hpp>

#include <matchforge/exact.hpp>
#include <matchforge/game.hpp>
#include <matchforge/rational.hpp>

#include "oracles.hpp"

using namespace matchforge;

namespace {

std::size_t opt_of(const GameTranscript& t) { return max_matching(t.final_graph).size(); }

std::size_t policy_rounds(const GameTranscript& t) {
    return static_cast<std::size_t>(std::count_if(t.rounds.begin(), t.rounds.end(),
                                                  [](const GameRound& r) { return !r.forced; }));
}

std::vector<Policy> with_random(Arity arity, std::uint64_t count) {
    auto out = arity == Arity::OneSided ? policies::one_sided() : policies::two_sided();
    for (std::uint64_t s = 1; s <= count; ++s) out.push_back(policies::random(arity, s));
    return out;
}

// Prefers the largest allowed degrees.
Policy greedy_for_degree() {
    return {"maxpair", Arity::TwoSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return -std::int64_t(p.du * 64 + p.dv); }};
}

Policy prefers_33() {
    return {"prefer33", Arity::TwoSided,
            [](Pattern p, const PolicyView&) -> std::int64_t { return p == Pattern{3, 3} ? 0 : 1; }};
}

} // namespace

TEST_CASE("trap adversary forces delta*k+2") {
    for (int delta = 3; delta <= 7; ++delta)
        for (int k : {1, 2, 3})
            for (const auto& pol : with_random(Arity::OneSided, 3)) {
                CAPTURE(delta, k, pol.name());
                auto t = play(pol, trap_adversary(delta, k));
                const auto alg = t.matching().size();
                if (delta == 3) {
                    CHECK(alg == oracle::trap3_alg(k, false));
                    CHECK(opt_of(t) == oracle::trap3_opt(k, false));
                } else {
                    CHECK(alg == oracle::trap_alg(delta, k, false));
                    CHECK(opt_of(t) == oracle::trap_opt(delta, k, false));
                }
                CHECK(t.final_graph.max_degree() <= static_cast<std::uint32_t>(delta));
                CHECK(verify_consistency(pol, t));
                CHECK(is_maximal(t.final_graph, t.matching()));
            }
}

TEST_CASE("trap adversary examples") {
    auto t = play(policies::karp_sipser(), trap_adversary(4, 10));
    CHECK(t.matching().size() == 42);
    CHECK(opt_of(t) == 62);
    CHECK(static_cast<int>(opt_of(t)) == oracle::bipartite_max_matching(t.final_graph));

    // Four picks inside the trap and two in the tail.
    auto g1 = play(policies::greedy(), trap_adversary(4, 1));
    CHECK(g1.rounds.size() == 6);
    CHECK(g1.matching().size() == 6);
    auto g1p = play(policies::greedy(), trap_adversary(4, 1), CleanupMode::PolicyDriven);
    CHECK(policy_rounds(g1p) == 6);
    CHECK(g1p.matching().size() == 6);

    auto mg = play(policies::min_greedy(), trap_adversary(5, 2));
    for (const auto& r : mg.rounds)
        if (!r.forced) {
            CHECK(r.pattern.du == 2);
            CHECK(r.inserted.empty());
        }

    for (int delta : {4, 5, 6, 9}) {
        auto big = play(policies::max_degree(), trap_adversary(delta, 3));
        CHECK(big.final_graph.max_degree() == static_cast<std::uint32_t>(delta));
        std::size_t inserted = 0;
        for (const auto& r : big.rounds) {
            if (!r.forced) CHECK(r.pattern.du == static_cast<std::uint32_t>(delta));
            inserted += r.inserted.size();
        }
        CHECK(inserted > 0);
    }
}

TEST_CASE("trap adversary optimum constant is stable in k") {
    for (int delta = 4; delta <= 6; ++delta) {
        auto pol = policies::max_degree();
        const auto c = static_cast<std::int64_t>(opt_of(play(pol, trap_adversary(delta, 1)))) - (2 * delta - 2);
        for (int k : {2, 3})
            CHECK(static_cast<std::int64_t>(opt_of(play(pol, trap_adversary(delta, k)))) == (2 * delta - 2) * k + c);
    }
}

TEST_CASE("perfect trap adversary") {
    for (int delta : {4, 5}) {
        auto t = play(policies::karp_sipser(), trap_adversary(delta, 3, true));
        CHECK(2 * opt_of(t) == t.final_graph.node_count());
        CHECK(t.matching().size() == oracle::trap_alg(delta, 3, true));
    }
}

TEST_CASE("two-sided degree-three adversary") {
    auto mds = play(policies::mds(), two_sided_d3_adversary(10));
    std::size_t units = 0;
    for (const auto& r : mds.rounds)
        if (!r.forced) {
            CHECK((r.pattern == Pattern{2, 3} || r.pattern == Pattern{3, 2}));
            ++units;
        }
    CHECK(units == 10);
    CHECK(mds.final_graph.node_count() == 80);

    auto comp = play(prefers_33(), two_sided_d3_adversary(10));
    for (const auto& r : comp.rounds)
        if (!r.forced) CHECK(r.pattern == Pattern{3, 3});
    CHECK(policy_rounds(comp) == 10);

    for (const auto& pol : with_random(Arity::TwoSided, 5)) {
        CAPTURE(pol.name());
        auto t = play(pol, two_sided_d3_adversary(10));
        CHECK(t.matching().size() <= 3u * 9 + 4);
        CHECK(opt_of(t) == 40);
        CHECK(t.final_graph.max_degree() <= 3);
        CHECK(verify_consistency(pol, t));
    }

    auto fifty = play(policies::mds(), two_sided_d3_adversary(50));
    CHECK(Rational(static_cast<std::int64_t>(fifty.matching().size()), static_cast<std::int64_t>(opt_of(fifty))) <=
          Rational(76, 100));
    CHECK_THROWS_AS(two_sided_d3_adversary(1), Error);
}

TEST_CASE("general two-sided adversary") {
    for (int delta = 3; delta <= 7; ++delta) {
        auto pols = with_random(Arity::TwoSided, 4);
        pols.push_back(greedy_for_degree());
        for (const auto& pol : pols) {
            CAPTURE(delta, pol.name());
            auto t = play(pol, general_two_sided_adversary(delta));
            CHECK(t.matching().size() == static_cast<std::size_t>(delta + 1));
            CHECK(opt_of(t) == static_cast<std::size_t>(2 * delta - 2));
            CHECK(t.final_graph.max_degree() <= static_cast<std::uint32_t>(delta));
            CHECK(verify_consistency(pol, t));
        }
    }
    auto d3 = play(policies::mds(), general_two_sided_adversary(3));
    CHECK(d3.rounds.size() == 4);
    auto full = play(greedy_for_degree(), general_two_sided_adversary(6));
    CHECK(full.final_graph.max_degree() == 6);
}

TEST_CASE("policy-driven cleanup") {
    for (const auto& pol : with_random(Arity::OneSided, 2)) {
        auto t = play(pol, trap_adversary(4, 2), CleanupMode::PolicyDriven);
        CHECK(std::none_of(t.rounds.begin(), t.rounds.end(), [](const GameRound& r) { return r.forced; }));
        CHECK(verify_consistency(pol, t));
        CHECK(is_maximal(t.final_graph, t.matching()));
    }
    for (const auto& pol : with_random(Arity::TwoSided, 2)) {
        auto t = play(pol, general_two_sided_adversary(5), CleanupMode::PolicyDriven);
        CHECK(verify_consistency(pol, t));
        CHECK(t.matching().size() <= 6);
    }
}

TEST_CASE("consistency check rejects tampered transcripts") {
    auto pol = policies::random(Arity::OneSided, 7);
    auto t = play(pol, trap_adversary(5, 3));
    REQUIRE(verify_consistency(pol, t));

    auto bumped = t;
    auto it = std::find_if(bumped.rounds.begin(), bumped.rounds.end(), [](const GameRound& r) { return !r.forced; });
    REQUIRE(it != bumped.rounds.end());
    it->pattern.du += 1;
    CHECK_FALSE(verify_consistency(pol, bumped));

    auto swapped = t;
    std::size_t first = swapped.rounds.size(), second = swapped.rounds.size();
    for (std::size_t i = 0; i < swapped.rounds.size(); ++i) {
        if (swapped.rounds[i].forced) continue;
        if (first == swapped.rounds.size()) first = i;
        else if (swapped.rounds[i].pattern != swapped.rounds[first].pattern) {
            second = i;
            break;
        }
    }
    REQUIRE(second < swapped.rounds.size());
    std::swap(swapped.rounds[first], swapped.rounds[second]);
    CHECK_FALSE(verify_consistency(pol, swapped));

    // A different policy would not have made these choices.
    CHECK_FALSE(verify_consistency(policies::greedy(), t));
    CHECK_THROWS_AS(verify_consistency(policies::mds(), t), Error);
}

TEST_CASE("arity mismatch and bad parameters") {
    try {
        play(policies::mds(), trap_adversary(4, 2));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ArityMismatch);
    }
    CHECK_THROWS_AS(play(policies::karp_sipser(), general_two_sided_adversary(4)), Error);
    CHECK_THROWS_AS(trap_adversary(2, 1), Error);
    CHECK_THROWS_AS(trap_adversary(4, 0), Error);
    CHECK_THROWS_AS(general_two_sided_adversary(2), Error);
}

TEST_CASE("policies order patterns totally") {
    PolicyView view;
    for (const auto& pol : with_random(Arity::TwoSided, 3)) {
        std::vector<Pattern> all;
        for (std::uint32_t a = 1; a <= 5; ++a)
            for (std::uint32_t b = 1; b <= 5; ++b) all.push_back({a, b});
        for (auto x : all)
            for (auto y : all)
                if (x != y) CHECK(pol.prefers(x, y, view) != pol.prefers(y, x, view));
    }
    CHECK(policies::karp_sipser().choose(std::vector<Pattern>{{3, 0}, {1, 0}, {2, 0}}, view) == Pattern{1, 0});
    CHECK(policies::min_degree_pair().choose(std::vector<Pattern>{{3, 2}, {2, 4}, {3, 3}}, view) == Pattern{3, 2});
    CHECK(policies::mds().choose(std::vector<Pattern>{{3, 2}, {2, 4}, {3, 3}}, view) == Pattern{3, 2});
    CHECK(policies::by_name("mds", Arity::TwoSided)->name() == "mds");
    CHECK(policies::by_name("random:4", Arity::OneSided)->arity() == Arity::OneSided);
    CHECK_FALSE(policies::by_name("nope", Arity::OneSided));
}

TEST_CASE("transcript text round trip") {
    for (auto t : {play(policies::karp_sipser(), trap_adversary(4, 2)),
                   play(policies::mds(), two_sided_d3_adversary(3)),
                   play(policies::random(Arity::TwoSided, 2), general_two_sided_adversary(5))}) {
        auto text = transcript_to_text(t);
        auto back = transcript_from_text(text);
        CHECK(transcript_to_text(back) == text);
        CHECK(back.final_graph == t.final_graph);
        CHECK(back.arity == t.arity);
        CHECK(back.rounds.size() == t.rounds.size());
        auto pol = policies::by_name(t.policy, t.arity).value();
        CHECK(verify_consistency(pol, back));
    }
    CHECK_THROWS_AS(transcript_from_text("1 2 0 1\n"), Error);
    CHECK_THROWS_AS(transcript_from_text("2 2 0 1\nmg 1 bip 2 1 1\n0 1\n"), Error);
}
