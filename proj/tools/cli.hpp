#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <matchforge/matchforge.hpp>

namespace matchforge::cli {

using Params = std::map<std::string, std::int64_t>;

// "7", "1,5,25" or "1..50"; mixing is allowed ("1..3,10").
inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    auto number = [&](const std::string& s) -> std::int64_t {
        try {
            std::size_t used = 0;
            auto v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(ErrorKind::BadParams, "not an integer: '" + s + "'");
        }
    };
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string part = text.substr(pos, comma - pos);
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(number(part));
        } else {
            auto lo = number(part.substr(0, dots)), hi = number(part.substr(dots + 2));
            if (hi < lo) fail(ErrorKind::BadParams, "empty range '" + part + "'");
            if (hi - lo > 1'000'000) fail(ErrorKind::BadParams, "range too long '" + part + "'");
            for (auto v = lo; v <= hi; ++v) out.push_back(v);
        }
        pos = comma + 1;
    }
    return out;
}

inline std::int64_t require(const Params& p, const std::string& key, const std::string& family) {
    auto it = p.find(key);
    if (it == p.end()) fail(ErrorKind::BadParams, family + " needs --" + key);
    return it->second;
}

inline std::int64_t get_or(const Params& p, const std::string& key, std::int64_t fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

inline const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"trap",   "trap3",   "twosided3", "mds",
                                                "avgdeg", "c4chord", "random",    "randomgen"};
    return names;
}

// Keys each family reads, in the order sweep configurations vary.
inline std::vector<std::string> family_keys(const std::string& family) {
    if (family == "trap") return {"delta", "k", "perfect"};
    if (family == "trap3") return {"k", "perfect"};
    if (family == "twosided3") return {"n", "k"};
    if (family == "mds") return {"delta"};
    if (family == "avgdeg") return {"n"};
    if (family == "c4chord") return {};
    if (family == "random") return {"nl", "nr", "delta", "seed"};
    if (family == "randomgen") return {"n", "delta", "seed"};
    fail(ErrorKind::BadParams, "unknown family '" + family + "'");
}

inline Instance make_instance(const std::string& family, const Params& p) {
    auto as_int = [](std::int64_t v) { return static_cast<int>(v); };
    if (family == "trap")
        return gen_trap_chain(as_int(require(p, "delta", family)), as_int(require(p, "k", family)),
                              get_or(p, "perfect", 0) != 0);
    if (family == "trap3")
        return gen_trap_chain_d3(as_int(require(p, "k", family)), get_or(p, "perfect", 0) != 0);
    if (family == "twosided3") {
        auto n = require(p, "n", family);
        return gen_two_sided_d3(as_int(n), as_int(get_or(p, "k", n)));
    }
    if (family == "mds") return gen_mds_instance(as_int(require(p, "delta", family)));
    if (family == "avgdeg") return gen_avg_degree_instance(as_int(require(p, "n", family)));
    if (family == "c4chord") return gen_chorded_c4();

    auto non_negative = [&](const std::string& key) {
        auto v = require(p, key, family);
        if (v < 0) fail(ErrorKind::BadParams, "--" + key + " must be non-negative");
        return static_cast<std::uint64_t>(v);
    };
    Instance inst;
    auto& d = inst.descriptor;
    if (family == "random") {
        inst.graph = gen_random_bipartite(non_negative("nl"), non_negative("nr"),
                                          static_cast<std::uint32_t>(non_negative("delta")),
                                          static_cast<std::uint64_t>(get_or(p, "seed", 0)));
        d.family = Family::RandomBipartite;
        d.params = {{"nl", p.at("nl")}, {"nr", p.at("nr")}, {"delta", p.at("delta")},
                    {"seed", get_or(p, "seed", 0)}};
        return inst;
    }
    if (family == "randomgen") {
        inst.graph = gen_random_general(non_negative("n"), static_cast<std::uint32_t>(non_negative("delta")),
                                        static_cast<std::uint64_t>(get_or(p, "seed", 0)));
        d.family = Family::RandomGeneral;
        d.params = {{"n", p.at("n")}, {"delta", p.at("delta")}, {"seed", get_or(p, "seed", 0)}};
        return inst;
    }
    fail(ErrorKind::BadParams, "unknown family '" + family + "'");
}

struct RowResult {
    std::vector<std::string> rows;
    bool all_bounds_hold = true;
};

// One CSV row per (algorithm, tie-break policy) on a single instance.
inline RowResult evaluate(const Instance& inst, const std::vector<Algorithm>& algs,
                          const std::vector<TieBreakPolicy>& policies, NeighborRule neighbor) {
    RowResult out;
    const Matching opt = max_matching(inst.graph);
    for (auto a : algs)
        for (const auto& pol : policies) {
            RunOptions o{pol, neighbor, false};
            auto r = run_heuristic(a, inst.graph, o);
            auto rep = ratio_report(inst.graph, r.matching, opt);
            out.all_bounds_hold = out.all_bounds_hold && rep.bound_holds;
            out.rows.push_back(csv_row(inst.descriptor.name(), std::string(to_string(a)), pol.str(), rep));
        }
    return out;
}

inline std::size_t thread_budget(std::size_t jobs) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MATCHFORGE_THREADS")) {
        try {
            auto cap = std::stoll(env);
            if (cap >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

inline std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
    std::vector<Algorithm> out;
    for (const auto& s : names) {
        auto a = parse_algorithm(s);
        if (!a) fail(ErrorKind::BadParams, "unknown algorithm '" + s + "'");
        out.push_back(*a);
    }
    return out;
}

inline NeighborRule parse_neighbor(const std::string& s) {
    if (s == "arbitrary") return NeighborRule::Arbitrary;
    if (s == "mindegree") return NeighborRule::MinDegree;
    fail(ErrorKind::BadParams, "unknown neighbor rule '" + s + "'");
}

// Runs the command line; returns the process exit code. Exposed for tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"matchforge: matching heuristics, worst-case instances and the priority game"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // gen
    auto* gen = app.add_subcommand("gen", "Write a generated instance");
    std::string gen_family, gen_out;
    std::map<std::string, std::int64_t> gen_raw;
    bool gen_perfect = false;
    gen->add_option("family", gen_family, "trap|trap3|twosided3|mds|avgdeg|c4chord|random|randomgen")
        ->required();
    for (const char* key : {"delta", "k", "n", "nl", "nr", "seed"})
        gen->add_option(std::string("--") + key, gen_raw[key]);
    gen->add_flag("--perfect", gen_perfect, "Trap variant with a perfect matching");
    gen->add_option("-o,--out", gen_out, "Graph file; the descriptor goes to <out>.desc");

    // run
    auto* runc = app.add_subcommand("run", "Run a heuristic and report its ratio");
    std::string run_alg, run_file, run_policy = "lex", run_neighbor = "arbitrary", run_trace;
    std::uint64_t run_seed = 0;
    bool run_assert = false;
    runc->add_option("algorithm", run_alg)->required();
    runc->add_option("graph", run_file)->required();
    runc->add_option("--policy", run_policy)->check(CLI::IsMember({"lex", "seeded"}));
    runc->add_option("--seed", run_seed);
    runc->add_option("--neighbor", run_neighbor)->check(CLI::IsMember({"arbitrary", "mindegree"}));
    runc->add_option("--trace", run_trace, "Write the pick trace here");
    runc->add_flag("--assert-bound", run_assert);

    // exact
    auto* exact = app.add_subcommand("exact", "Print a maximum matching");
    std::string exact_file;
    exact->add_option("graph", exact_file)->required();

    // game
    auto* game = app.add_subcommand("game", "Play the priority game");
    std::string game_policy, game_adv, game_cleanup = "forced", game_transcript;
    int game_delta = 0, game_k = 1, game_n = 0;
    bool game_perfect = false, game_assert = false;
    game->add_option("--policy", game_policy)->required();
    game->add_option("--adv", game_adv)->required()->check(CLI::IsMember({"trap", "twosided3", "general2s"}));
    game->add_option("--delta", game_delta);
    game->add_option("--k", game_k);
    game->add_option("--n", game_n);
    game->add_flag("--perfect", game_perfect);
    game->add_option("--cleanup", game_cleanup)->check(CLI::IsMember({"forced", "policy"}));
    game->add_option("--transcript", game_transcript, "Write the transcript here");
    game->add_flag("--assert-bound", game_assert);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "CSV over a grid of instances and heuristics");
    std::string sw_family, sw_out, sw_policy = "lex", sw_neighbor = "arbitrary", sw_seeds = "1";
    std::vector<std::string> sw_algs;
    std::map<std::string, std::string> sw_lists;
    bool sw_perfect = false, sw_assert = false;
    sweep->add_option("--family", sw_family)->required();
    for (const char* key : {"delta", "k", "n", "nl", "nr", "graph-seeds"})
        sweep->add_option(std::string("--") + key, sw_lists[key], "List or range, e.g. 1..50 or 3,4,5");
    sweep->add_flag("--perfect", sw_perfect);
    sweep->add_option("--algs", sw_algs)->required()->delimiter(',');
    sweep->add_option("--policy", sw_policy)->check(CLI::IsMember({"lex", "seeded", "both"}));
    sweep->add_option("--seeds", sw_seeds, "Tie-break seeds for seeded runs");
    sweep->add_option("--neighbor", sw_neighbor)->check(CLI::IsMember({"arbitrary", "mindegree"}));
    sweep->add_option("-o,--out", sw_out);
    sweep->add_flag("--assert-bound", sw_assert);

    // check-trace
    auto* check = app.add_subcommand("check-trace", "Replay a KarpSipser trace and check it");
    std::string check_graph, check_trace;
    check->add_option("graph", check_graph)->required();
    check->add_option("trace", check_trace)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*gen) {
            Params p;
            for (const auto& [key, value] : gen_raw)
                if (gen->count("--" + key) > 0) p[key] = value;
            if (gen_perfect) p["perfect"] = 1;
            auto inst = make_instance(gen_family, p);
            if (gen_out.empty()) {
                out << inst.descriptor.sidecar() << graph_to_text(inst.graph);
            } else {
                save_graph(inst.graph, gen_out);
                detail::write_file(gen_out + ".desc", inst.descriptor.sidecar());
            }
            return 0;
        }

        if (*runc) {
            auto alg = parse_algorithms({run_alg}).front();
            Graph g = load_graph(run_file);
            RunOptions o;
            o.policy = run_policy == "lex" ? TieBreakPolicy::lexicographic() : TieBreakPolicy::seeded(run_seed);
            o.neighbor = parse_neighbor(run_neighbor);
            auto r = run_heuristic(alg, g, o);
            if (!run_trace.empty()) detail::write_file(run_trace, trace_to_text(r.trace));
            auto rep = ratio_report(g, r.matching, max_matching(g));
            out << csv_header() << "\n"
                << csv_row(std::filesystem::path(run_file).filename().string(), run_alg, o.policy.str(), rep)
                << "\n";
            return run_assert && !rep.bound_holds ? 1 : 0;
        }

        if (*exact) {
            Graph g = load_graph(exact_file);
            auto m = max_matching(g);
            out << "# size " << m.size() << "\n" << matching_to_text(m);
            return 0;
        }

        if (*game) {
            AdversarySpec spec = game_adv == "trap"        ? trap_adversary(game_delta, game_k, game_perfect)
                                 : game_adv == "twosided3" ? two_sided_d3_adversary(game_n)
                                                           : general_two_sided_adversary(game_delta);
            auto policy = policies::by_name(game_policy, arity_of(spec));
            if (!policy) fail(ErrorKind::BadParams, "unknown policy '" + game_policy + "'");
            auto t = play(*policy, spec,
                          game_cleanup == "forced" ? CleanupMode::Forced : CleanupMode::PolicyDriven);
            if (!game_transcript.empty()) detail::write_file(game_transcript, transcript_to_text(t));
            const bool consistent = verify_consistency(*policy, t);
            auto rep = ratio_report(t.final_graph, t.matching(), max_matching(t.final_graph));
            std::string name = "game:" + t.adversary;
            if (game_adv != "twosided3") name += ";delta=" + std::to_string(game_delta);
            if (game_adv == "trap") name += ";k=" + std::to_string(game_k) + ";perfect=" + (game_perfect ? "1" : "0");
            if (game_adv == "twosided3") name += ";n=" + std::to_string(game_n);
            out << csv_header() << "\n" << csv_row(name, policy->name(), game_cleanup, rep) << "\n";
            if (!consistent) {
                err << "error: transcript is not consistent with the policy\n";
                return 1;
            }
            return game_assert && !rep.bound_holds ? 1 : 0;
        }

        if (*sweep) {
            std::erase(sw_algs, std::string());
            if (sw_algs.empty()) fail(ErrorKind::BadParams, "--algs is empty");
            auto algs = parse_algorithms(sw_algs);
            const auto neighbor = parse_neighbor(sw_neighbor);
            std::vector<TieBreakPolicy> pols;
            if (sw_policy != "seeded") pols.push_back(TieBreakPolicy::lexicographic());
            if (sw_policy != "lex")
                for (auto s : parse_int_list(sw_seeds)) pols.push_back(TieBreakPolicy::seeded(static_cast<std::uint64_t>(s)));

            // Cartesian product over the family's keys, first key slowest.
            std::vector<Params> configs{Params{}};
            for (const auto& key : family_keys(sw_family)) {
                std::vector<std::int64_t> values;
                if (key == "perfect") {
                    values = {sw_perfect ? 1 : 0};
                } else {
                    const std::string& list = sw_lists[key == "seed" ? "graph-seeds" : key];
                    if (list.empty()) {
                        if (key == "seed") values = {0};
                        else if (key == "k" && sw_family == "twosided3") continue;
                        else fail(ErrorKind::BadParams, sw_family + " sweep needs --" + key);
                    } else {
                        values = parse_int_list(list);
                    }
                }
                std::vector<Params> next;
                for (const auto& c : configs)
                    for (auto v : values) {
                        auto d = c;
                        d[key] = v;
                        next.push_back(std::move(d));
                    }
                configs = std::move(next);
            }
            // Chains with more units than nodes are skipped, not errors.
            if (sw_family == "twosided3")
                std::erase_if(configs, [](const Params& c) {
                    return c.count("k") && (c.at("k") > c.at("n") || (c.at("n") == 1 && c.at("k") == 1));
                });

            std::vector<RowResult> results(configs.size());
            std::vector<std::string> errors(configs.size());
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i; (i = next++) < configs.size();) {
                    try {
                        results[i] = evaluate(make_instance(sw_family, configs[i]), algs, pols, neighbor);
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < thread_budget(configs.size()); ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();

            for (const auto& e : errors)
                if (!e.empty()) fail(ErrorKind::BadParams, e);
            std::string csv = csv_header() + "\n";
            bool holds = true;
            for (const auto& r : results) {
                for (const auto& row : r.rows) csv += row + "\n";
                holds = holds && r.all_bounds_hold;
            }
            if (sw_out.empty()) out << csv;
            else detail::write_file(sw_out, csv);
            return sw_assert && !holds ? 1 : 0;
        }

        if (*check) {
            Graph g = load_graph(check_graph);
            auto t = trace_from_text(detail::read_file(check_trace));
            auto violations = check_karp_sipser_trace(g, t, max_matching(g));
            for (const auto& v : violations)
                out << (v.kind == TraceViolation::Kind::LoneEndpoint ? "lone-endpoint" : "degree-drop")
                    << " round=" << v.round << " node=" << v.node << "\n";
            out << "violations " << violations.size() << "\n";
            return violations.empty() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"matchforge"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace matchforge::cli
