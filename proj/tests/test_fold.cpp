#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cifold/circuit.hpp"
#include "cifold/fold.hpp"
#include "cifold/graph.hpp"

using namespace cifold;

namespace {

// O(n^3) reference: try every start pair and extend.
std::optional<LccsMatch> lccs_brute(const std::vector<int>& a, const std::vector<int>& b,
                                    int min_len) {
    LccsMatch best{-1, -1, 0};
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) {
            int len = 0;
            while (i + len < a.size() && j + len < b.size() && a[i + len] == b[j + len]) ++len;
            int end1 = static_cast<int>(i) + len, end2 = static_cast<int>(j) + len;
            int bend1 = best.start1 + best.len, bend2 = best.start2 + best.len;
            if (len > best.len ||
                (len == best.len && len > 0 &&
                 (end1 < bend1 || (end1 == bend1 && end2 < bend2))))
                best = LccsMatch{static_cast<int>(i), static_cast<int>(j), len};
        }
    if (best.len < min_len || best.len == 0) return std::nullopt;
    return best;
}

}  // namespace

TEST_CASE("node labels ignore partner identity but keep kind") {
    Circuit c;
    c.num_qubits = 4;
    c.add("cx", {0, 1});
    c.add("cx", {2, 3});
    c.add("cz", {0, 1});
    CircuitGraph g = build_circuit_graph(c);
    CHECK(node_label(g, 0) == node_label(g, 2));  // both cx controls
    CHECK(node_label(g, 1) == node_label(g, 3));
    CHECK_FALSE(node_label(g, 0) == node_label(g, 1));  // control vs target
    CHECK_FALSE(node_label(g, 0) == node_label(g, 4));  // cx vs cz
}

TEST_CASE("labels quantize angles at the comparison tolerance") {
    Circuit c;
    c.num_qubits = 1;
    c.add("rz", {0}, {0.5});
    c.add("rz", {0}, {0.5 + 1e-12});
    c.add("rz", {0}, {0.5 + 1e-6});
    CircuitGraph g = build_circuit_graph(c);
    CHECK(node_label(g, 0) == node_label(g, 1));
    CHECK_FALSE(node_label(g, 0) == node_label(g, 2));
}

TEST_CASE("lccs_ids on hand examples") {
    auto m = lccs_ids({1, 2, 3, 4}, {9, 2, 3, 4, 7}, 2);
    REQUIRE(m.has_value());
    CHECK(m->start1 == 1);
    CHECK(m->start2 == 1);
    CHECK(m->len == 3);

    CHECK_FALSE(lccs_ids({1, 2}, {3, 4}, 1).has_value());
    CHECK_FALSE(lccs_ids({1, 2, 3}, {1, 2, 3}, 4).has_value());

    // tie-break: two equal-length runs, earliest end in s1 wins
    auto t = lccs_ids({5, 5, 1, 2, 9, 3, 4}, {1, 2, 8, 3, 4}, 2);
    REQUIRE(t.has_value());
    CHECK(t->len == 2);
    CHECK(t->start1 == 2);
    CHECK(t->start2 == 0);
}

TEST_CASE("lccs matches the brute-force oracle on random pairs") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> len_d(0, 30), sym_d(0, 4), min_d(1, 3);
    for (int it = 0; it < 500; ++it) {
        std::vector<int> a(len_d(rng)), b(len_d(rng));
        for (int& x : a) x = sym_d(rng);
        for (int& x : b) x = sym_d(rng);
        int min_len = min_d(rng);
        auto got = lccs_ids(a, b, min_len);
        auto want = lccs_brute(a, b, min_len);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(got->start1 == want->start1);
            CHECK(got->start2 == want->start2);
            CHECK(got->len == want->len);
            for (int k = 0; k < got->len; ++k)
                CHECK(a[got->start1 + k] == b[got->start2 + k]);
        }
    }
}

TEST_CASE("most_entangled_pairs prefers heavy pairs and stays disjoint") {
    // ghz(5): neighboring qubits share one cx each
    CircuitGraph g = build_circuit_graph(gen_ghz(5));
    auto qgs = extract_qubit_graphs(g);
    std::vector<FoldGroup> groups;
    for (const auto& qg : qgs) groups.push_back(FoldGroup{qg.qubit, {qg.qubit}, qg.sequence});
    auto pairs = most_entangled_pairs(groups, g);
    CHECK(pairs.size() == 2);  // 5 groups -> 2 pairs + 1 leftover
    std::set<int> used;
    for (auto [a, b] : pairs) {
        CHECK(used.insert(a).second);
        CHECK(used.insert(b).second);
    }
}

TEST_CASE("fold compresses GHZ to a constant-size pattern") {
    CircuitGraph g = build_circuit_graph(gen_ghz(8));
    MetaGraph mg = fold(extract_qubit_graphs(g), g, 3, 1);
    CHECK(mg.meta_nodes.size() <= 6);
    // provenance is total and consistent
    int covered = 0;
    for (const MetaNode& mn : mg.meta_nodes) {
        covered += mn.fold_weight;
        CHECK(mn.fold_weight == static_cast<int>(mn.folded_nodes.size()));
        for (int v : mn.folded_nodes) CHECK(mg.rep_of[v] == mn.representative);
    }
    CHECK(covered == static_cast<int>(g.nodes.size()));
}

TEST_CASE("self-fold collapses long repeated runs on one wire") {
    Circuit c;
    c.num_qubits = 1;
    for (int i = 0; i < 20; ++i) c.add("t", {0});
    CircuitGraph g = build_circuit_graph(c);
    MetaGraph mg = fold(extract_qubit_graphs(g), g, 3, 1);
    // 20 -> 10 -> 5 halvings; 5 is below 2*min_len so recursion stops
    CHECK(mg.meta_nodes.size() == 5);
}

TEST_CASE("fold result is independent of the worker count") {
    for (const Circuit& c : {gen_qft(24), gen_bv("1011011101101110110"), gen_adder(11)}) {
        CircuitGraph g = build_circuit_graph(c);
        MetaGraph ref = fold(extract_qubit_graphs(g), g, 3, 1);
        for (int threads : {2, 4, 8}) {
            MetaGraph mt = fold(extract_qubit_graphs(g), g, 3, threads);
            REQUIRE(mt.meta_nodes.size() == ref.meta_nodes.size());
            CHECK(mt.rep_of == ref.rep_of);
            for (size_t i = 0; i < ref.meta_nodes.size(); ++i)
                CHECK(mt.meta_nodes[i].folded_nodes == ref.meta_nodes[i].folded_nodes);
        }
    }
}

TEST_CASE("folding reaches the compression target on benchmarks") {
    auto ratio = [](const Circuit& c) {
        CircuitGraph g = build_circuit_graph(c);
        MetaGraph mg = fold(extract_qubit_graphs(g), g, 3, 1);
        return static_cast<double>(mg.meta_nodes.size()) / static_cast<double>(g.nodes.size());
    };
    CHECK(ratio(gen_ghz(20)) <= 0.40);
    CHECK(ratio(gen_bv("1111111111111111111")) <= 0.40);
    CHECK(ratio(gen_adder(9)) <= 0.40);
    CHECK(ratio(gen_qft(20)) <= 0.40);
}

TEST_CASE("meta edges connect representatives") {
    CircuitGraph g = build_circuit_graph(gen_adder(4));
    MetaGraph mg = fold(extract_qubit_graphs(g), g, 3, 1);
    for (const GraphEdge& e : mg.meta_edges) {
        CHECK(mg.rep_of[e.src] == e.src);
        CHECK(mg.rep_of[e.dst] == e.dst);
    }
    CHECK_FALSE(export_dot(mg, g).empty());
}
