#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "cifold/circuit.hpp"
#include "cifold/cost.hpp"
#include "cifold/graph.hpp"
#include "cifold/partition.hpp"

using namespace cifold;

TEST_CASE("node_set_width counts wire segments") {
    CircuitGraph g = build_circuit_graph(gen_ghz(4));
    std::vector<bool> in_set(g.nodes.size(), true);
    std::vector<int> all;
    for (size_t i = 0; i < g.nodes.size(); ++i) all.push_back(static_cast<int>(i));
    CHECK(node_set_width(in_set, all, g) == 4);

    // drop the middle of one wire: the tail opens a second segment
    Circuit c;
    c.num_qubits = 1;
    for (int i = 0; i < 3; ++i) c.add("t", {0});
    CircuitGraph g1 = build_circuit_graph(c);
    std::vector<bool> set1 = {true, false, true};
    std::vector<int> nodes1 = {0, 2};
    CHECK(node_set_width(set1, nodes1, g1) == 2);
}

TEST_CASE("finalize_partition renumbers and derives cuts") {
    CircuitGraph g = build_circuit_graph(gen_ghz(4));  // 7 nodes
    std::vector<int> frag_of = {5, 5, 5, 9, 9, 9, 9};
    Partition p = finalize_partition(frag_of, g);
    REQUIRE(p.fragments.size() == 2);
    CHECK(p.fragments[0].id == 0);
    CHECK(p.fragments[0].node_ids == std::vector<int>{0, 1, 2});
    CHECK(p.fragments[1].node_ids == std::vector<int>{3, 4, 5, 6});
    REQUIRE(p.cuts.size() == 1);
    // the split falls on the q1 wire between the two cx gates
    CHECK(p.cuts[0].kind == EdgeKind::Wire);
    CHECK(p.cuts[0].fragments == std::pair<int, int>{0, 1});
    CHECK(p.cuts[0].gamma == 16.0);
    CHECK(p.frag_of[0] == 0);
    CHECK(p.frag_of[6] == 1);
}

TEST_CASE("single-fragment width and depth") {
    CircuitGraph g = build_circuit_graph(gen_ghz(4));
    Partition p = finalize_partition(std::vector<int>(g.nodes.size(), 0), g);
    REQUIRE(p.fragments.size() == 1);
    CHECK(p.fragments[0].width == 4);
    CHECK(p.fragments[0].depth == 4);  // h, cx01, cx12, cx23 in ASAP layers
}

TEST_CASE("cut boundaries add prepare and measure depth") {
    Circuit c;
    c.num_qubits = 1;
    c.add("h", {0});
    c.add("h", {0});
    CircuitGraph g = build_circuit_graph(c);
    Partition p = finalize_partition({0, 1}, g);
    REQUIRE(p.fragments.size() == 2);
    // upstream: h + measure; downstream: prepare + h
    CHECK(p.fragments[0].depth == 2);
    CHECK(p.fragments[1].depth == 2);
    CHECK(p.cuts[0].kind == EdgeKind::Wire);
}

TEST_CASE("wl hash is invariant under qubit relabeling") {
    Circuit a;
    a.num_qubits = 4;
    a.add("h", {0});
    a.add("cx", {0, 1});
    a.add("h", {2});
    a.add("cx", {2, 3});
    CircuitGraph g = build_circuit_graph(a);
    std::vector<int> left = {0, 1, 2};
    std::vector<int> right = {3, 4, 5};
    CHECK(wl_hash(left, g) == wl_hash(right, g));

    // different structure hashes apart
    Circuit b = a;
    b.gates[3] = Gate{"cz", {}, {2, 3}};
    CircuitGraph g2 = build_circuit_graph(b);
    CHECK(wl_hash(left, g2) != wl_hash(right, g2));
}

TEST_CASE("wl hash is stable across processes (fixed algorithm, no std::hash)") {
    CircuitGraph g = build_circuit_graph(gen_ghz(4));
    std::vector<int> sub = {0, 1, 2};
    uint64_t h1 = wl_hash(sub, g);
    uint64_t h2 = wl_hash(sub, g);
    CHECK(h1 == h2);
    CHECK(h1 != 0);
}

TEST_CASE("module finding covers each node at most once and respects the limit") {
    for (int k : {3, 4, 6}) {
        CircuitGraph g = build_circuit_graph(gen_adder(5));
        auto qgs = extract_qubit_graphs(g);
        MetaGraph mg = fold(qgs, g, 3, 1);
        auto mods = module_finding(g, mg, k);
        std::vector<int> seen(g.nodes.size(), 0);
        for (const auto& m : mods) {
            std::vector<bool> in_set(g.nodes.size(), false);
            for (int v : m.nodes) {
                seen[v]++;
                in_set[v] = true;
            }
            CHECK(node_set_width(in_set, m.nodes, g) <= k);
        }
        for (int s : seen) CHECK(s == 1);
    }
}

TEST_CASE("ghz-8 with K=4 partitions into two fragments with one cut") {
    Partition p = partition_circuit(gen_ghz(8), 4);
    CHECK(p.fragments.size() == 2);
    REQUIRE(p.cuts.size() == 1);
    CHECK(p.cuts[0].kind == EdgeKind::Gate);
    CHECK(p.fragments[0].width == 4);
    CHECK(p.fragments[1].width == 4);
}

namespace {

// Exhaustive oracle: all cut sets of size <= max_cuts whose removal yields a
// feasible partition; returns the minimum theoretical QRO in log10.
double best_qro_by_enumeration(const CircuitGraph& g, int q_con, int max_cuts) {
    const int ne = static_cast<int>(g.edges.size());
    const int n = static_cast<int>(g.nodes.size());
    double best = std::numeric_limits<double>::infinity();

    std::vector<int> picks;
    std::function<void(int)> go = [&](int from) {
        // components after removing picked edges
        std::vector<int> comp(n, -1);
        std::set<int> removed(picks.begin(), picks.end());
        int nc = 0;
        for (int s = 0; s < n; ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack{s};
            comp[s] = nc;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (auto [eidx, u] : g.adj[v]) {
                    if (removed.count(eidx) || comp[u] >= 0) continue;
                    comp[u] = nc;
                    stack.push_back(u);
                }
            }
            ++nc;
        }
        // every removed edge must actually cross
        bool all_cross = true;
        for (int e : picks) all_cross &= comp[g.edges[e].src] != comp[g.edges[e].dst];
        if (all_cross) {
            Partition p = finalize_partition(comp, g);
            bool feasible = true;
            for (const Fragment& f : p.fragments) feasible &= f.width <= q_con;
            if (feasible) best = std::min(best, qro(p, g).qro_log10_theoretical);
        }
        if (static_cast<int>(picks.size()) == max_cuts) return;
        for (int e = from; e < ne; ++e) {
            picks.push_back(e);
            go(e + 1);
            picks.pop_back();
        }
    };
    go(0);
    return best;
}

}  // namespace

TEST_CASE("pipeline matches the exhaustive small-circuit oracle") {
    for (auto [circ, k] : std::vector<std::pair<Circuit, int>>{
             {gen_ghz(8), 4}, {gen_ghz(6), 3}, {gen_bv("1101"), 3}}) {
        CircuitGraph g = build_circuit_graph(circ);
        double oracle = best_qro_by_enumeration(g, k, 2);
        Partition p = partition_circuit(g, k);
        check_partition(p, g, k);
        double got = qro(p, g).qro_log10_theoretical;
        // never worse than the best <=2-cut partition
        CHECK(got <= oracle + 1e-9);
    }
}

TEST_CASE("partition validity across workloads and constraints") {
    std::vector<Circuit> circuits = {gen_ghz(30),  gen_bv("10110111011011101101101110111"),
                                     gen_adder(14), gen_qft(30)};
    for (const Circuit& c : circuits)
        for (int k : {5, 10, 20}) {
            CircuitGraph g = build_circuit_graph(c);
            Partition p = partition_circuit(g, k);
            CHECK_NOTHROW(check_partition(p, g, k));
        }
}

TEST_CASE("pipeline output is identical for any worker count") {
    for (const Circuit& c : {gen_qft(24), gen_adder(10)}) {
        CircuitGraph g = build_circuit_graph(c);
        PartitionConfig cfg;
        cfg.threads = 1;
        Partition ref = partition_circuit(g, 8, cfg);
        for (int t : {4, 8}) {
            cfg.threads = t;
            Partition p = partition_circuit(g, 8, cfg);
            CHECK(p.frag_of == ref.frag_of);
        }
    }
}

TEST_CASE("naive baseline builds contiguous blocks") {
    CircuitGraph g = build_circuit_graph(gen_ghz(10));
    Partition p = naive_baseline(g, 4);
    REQUIRE(p.fragments.size() == 3);
    for (const Fragment& f : p.fragments)
        for (int v : f.node_ids) CHECK(g.nodes[v].qubit / 4 == f.id);
    CHECK_NOTHROW(check_partition(p, g, 4));
}

TEST_CASE("check_partition flags violations") {
    CircuitGraph g = build_circuit_graph(gen_ghz(6));
    Partition p = naive_baseline(g, 3);
    CHECK_NOTHROW(check_partition(p, g, 3));
    CHECK_THROWS_AS(check_partition(p, g, 2), Error);  // width now violated

    Partition corrupt = p;
    corrupt.cuts.pop_back();
    CHECK_THROWS_AS(check_partition(corrupt, g, 3), Error);

    Partition missing = p;
    missing.fragments[0].node_ids.pop_back();
    CHECK_THROWS_AS(check_partition(missing, g, 3), Error);
}

TEST_CASE("infeasible or empty inputs are rejected") {
    CircuitGraph g = build_circuit_graph(gen_ghz(4));
    CHECK_THROWS_AS(partition_circuit(g, 1), Error);
    CircuitGraph empty;
    CHECK_THROWS_AS(partition_circuit(empty, 4), Error);
}
