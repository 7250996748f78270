#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cifold/circuit.hpp"
#include "cifold/cost.hpp"
#include "cifold/graph.hpp"
#include "cifold/partition.hpp"

using namespace cifold;

TEST_CASE("gamma lookups") {
    GammaTable t;
    CHECK(gamma_lookup(EdgeKind::Wire, "", t) == 16.0);
    CHECK(t.gate_gamma("cx") == 9.0);
    CHECK(t.gate_gamma("cz") == 9.0);
    CHECK(t.gate_gamma("cp") == 9.0);
    CHECK(t.gate_gamma("swap") == 49.0);
    CHECK_THROWS_AS(t.gate_gamma("h"), Error);

    GammaTable s;
    s.variation_sqrt = true;
    CHECK(gamma_lookup(EdgeKind::Wire, "", s) == doctest::Approx(4.0));
    CHECK(s.gate_gamma("cx") == doctest::Approx(3.0));
}

TEST_CASE("parallel wire grouping arithmetic") {
    GammaTable t;
    CHECK(t.parallel_wire(1) == 16.0);
    CHECK(t.parallel_wire(2) == 81.0);   // (2^3+1)^2 vs 16^2 = 256
    CHECK(t.parallel_wire(3) == 289.0);  // (2^4+1)^2 vs 16^3 = 4096
    CHECK(t.parallel_wire(4) == 1089.0);
    CHECK(std::pow(16.0, 2) == 256.0);
    CHECK(std::pow(16.0, 3) == 4096.0);
}

TEST_CASE("sampling overhead is gamma^n") {
    CHECK(sampling_overhead(9.0, 0) == 1.0);
    CHECK(sampling_overhead(9.0, 2) == 81.0);
    CHECK(sampling_overhead(16.0, 3) == 4096.0);
    CHECK_THROWS_AS(sampling_overhead(9.0, -1), Error);
}

namespace {

// Chain of 1q gates on each of two qubits, split mid-wire so consecutive
// wire cuts between the same fragment pair arise.
Partition two_frag_by_gate_index(const CircuitGraph& g, int split_at) {
    std::vector<int> frag_of(g.nodes.size());
    for (size_t v = 0; v < g.nodes.size(); ++v) frag_of[v] = g.nodes[v].gate_ref < split_at ? 0 : 1;
    return finalize_partition(frag_of, g);
}

}  // namespace

TEST_CASE("parallel cut detection on adjacent wire cuts") {
    Circuit c;
    c.num_qubits = 2;
    for (int r = 0; r < 2; ++r)
        for (int q = 0; q < 2; ++q) c.add("h", {q});
    // gates: h0 h1 h0 h1 -> cutting both wires between rounds is parallel
    CircuitGraph g = build_circuit_graph(c);
    Partition p = two_frag_by_gate_index(g, 2);
    REQUIRE(p.cuts.size() == 2);
    auto groups = group_parallel_cuts(p, g);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].kind == CutGroupKind::Parallel);
    CHECK(groups[0].cut_indices.size() == 2);
}

TEST_CASE("staggered wire cuts with an intervening op are not parallel") {
    Circuit c;
    c.num_qubits = 2;
    c.add("h", {0});
    c.add("h", {1});
    c.add("h", {0});  // extra op on q0 between the two cut positions
    c.add("h", {0});
    c.add("h", {1});
    CircuitGraph g = build_circuit_graph(c);
    // cut q0 after node of gate 0 and q1 after gate 1: fragment split by id
    std::vector<int> frag_of = {0, 0, 1, 1, 1};
    Partition p = finalize_partition(frag_of, g);
    REQUIRE(p.cuts.size() == 2);
    auto groups = group_parallel_cuts(p, g);
    // the h between the cut positions on q0 blocks grouping
    bool any_parallel = false;
    for (const auto& grp : groups) any_parallel |= grp.kind == CutGroupKind::Parallel;
    CHECK_FALSE(any_parallel);
}

TEST_CASE("third-party fragment between cuts marks a blackbox group") {
    Circuit c;
    c.num_qubits = 2;
    c.add("h", {0});  // node 0, fragment 0
    c.add("h", {1});  // node 1, fragment 2 (the interloper)
    c.add("h", {1});  // node 2, fragment 0
    c.add("h", {0});  // node 3, fragment 1
    c.add("h", {1});  // node 4, fragment 1
    CircuitGraph g = build_circuit_graph(c);
    // Pair (0,1) gets wire cuts 0-3 (q0) and 2-4 (q1); node 1 from fragment 2
    // sits between the cut positions on an affected wire.
    std::vector<int> frag_of = {0, 2, 0, 1, 1};
    Partition p = finalize_partition(frag_of, g);
    auto groups = group_parallel_cuts(p, g);
    int blackbox = 0;
    for (const auto& grp : groups)
        if (grp.kind == CutGroupKind::Blackbox) ++blackbox;
    CHECK(blackbox >= 1);
}

TEST_CASE("qro is recomputable from its parts") {
    CircuitGraph g = build_circuit_graph(gen_ghz(12));
    Partition p = naive_baseline(g, 4);
    CostReport r = qro(p, g);

    for (int mode = 0; mode < 2; ++mode) {
        double total = 0.0;
        double total_log = -1e300;
        std::vector<double> logs;
        for (const FragmentCost& f : r.fragments) {
            double lg = (mode == 0 ? f.log10_gamma_theoretical : f.log10_gamma_practical) +
                        std::log10(static_cast<double>(f.width) * f.depth);
            logs.push_back(lg);
            total += std::pow(10.0, lg);
        }
        double want = mode == 0 ? r.qro_theoretical : r.qro_practical;
        CHECK(total == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("practical mode never undercounts theoretical") {
    for (int k : {3, 4, 5}) {
        CircuitGraph g = build_circuit_graph(gen_adder(6));
        Partition p = partition_circuit(g, k * 2);
        CostReport r = qro(p, g);
        CHECK(r.qro_log10_theoretical <= r.qro_log10_practical + 1e-9);
    }
}

TEST_CASE("huge practical overheads saturate to inf but keep log10") {
    CircuitGraph g = build_circuit_graph(gen_qft(60));
    Partition p = naive_baseline(g, 20);
    CostReport r = qro(p, g);
    CHECK(std::isinf(r.qro_practical));
    CHECK(r.qro_log10_practical > 300.0);
    CHECK(std::isfinite(r.qro_log10_practical));
}

TEST_CASE("error budget shot counts") {
    ErrorBudget b;  // epsilon 0.05
    // gamma product 81 -> shots >= 81/0.0025 = 32400
    CHECK(b.shots(std::log10(81.0)) == doctest::Approx(32400.0));
    CHECK(b.shots_log10(std::log10(81.0)) == doctest::Approx(std::log10(32400.0)));
    CHECK(std::isinf(b.shots(400.0)));
}
