// Builds a trap chain, runs every heuristic on it and prints sizes against
// the optimum.
#include <iostream>

#include <matchforge/matchforge.hpp>

int main(int argc, char** argv) {
    using namespace matchforge;
    const int delta = argc > 1 ? std::atoi(argv[1]) : 4;
    const int k = argc > 2 ? std::atoi(argv[2]) : 10;
    try {
        auto inst = gen_trap_chain(delta, k);
        const auto opt = max_matching(inst.graph);
        std::cout << inst.descriptor.name() << ": " << inst.graph.node_count() << " nodes, "
                  << inst.graph.edge_count() << " edges, optimum " << opt.size() << "\n";
        for (auto a : all_algorithms) {
            auto r = run_heuristic(a, inst.graph);
            auto rep = ratio_report(inst.graph, r.matching, opt);
            std::cout << "  " << to_string(a) << " " << rep.alg_size << " ratio " << rep.ratio.str()
                      << " (bound " << rep.bound.str() << ")\n";
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
