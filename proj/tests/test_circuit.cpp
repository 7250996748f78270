#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "cifold/circuit.hpp"

using namespace cifold;

TEST_CASE("gate table covers the supported set") {
    const auto& t = gate_table();
    CHECK(t.size() == 16);
    CHECK(t.at("cx").arity == 2);
    CHECK_FALSE(t.at("cx").symmetric);
    CHECK(t.at("cz").symmetric);
    CHECK(t.at("cp").symmetric);
    CHECK(t.at("cp").num_params == 1);
    CHECK(t.at("swap").symmetric);
    CHECK(t.at("rz").num_params == 1);
    CHECK(t.at("h").arity == 1);
}

TEST_CASE("same_gate tolerates tiny angle differences") {
    Gate a{"rz", {1.0}, {0}};
    Gate b{"rz", {1.0 + 1e-12}, {0}};
    Gate c{"rz", {1.0 + 1e-6}, {0}};
    CHECK(same_gate(a, b));
    CHECK_FALSE(same_gate(a, c));
    CHECK_FALSE(same_gate(a, Gate{"rz", {1.0}, {1}}));
    CHECK_FALSE(same_gate(a, Gate{"ry", {1.0}, {0}}));
}

TEST_CASE("validate rejects malformed circuits") {
    Circuit c;
    c.num_qubits = 2;
    c.add("h", {0});
    CHECK_NOTHROW(validate(c));

    Circuit bad_name = c;
    bad_name.add("foo", {0});
    CHECK_THROWS_AS(validate(bad_name), Error);

    Circuit bad_arity = c;
    bad_arity.add("cx", {0});
    CHECK_THROWS_AS(validate(bad_arity), Error);

    Circuit dup = c;
    dup.add("cx", {1, 1});
    CHECK_THROWS_AS(validate(dup), Error);

    Circuit out_of_range = c;
    out_of_range.add("x", {2});
    CHECK_THROWS_AS(validate(out_of_range), Error);

    Circuit missing_param = c;
    missing_param.add("rz", {0});
    CHECK_THROWS_AS(validate(missing_param), Error);

    Circuit empty;
    CHECK_THROWS_AS(validate(empty), Error);
}

TEST_CASE("gen_ghz emits h plus a cx chain") {
    Circuit c = gen_ghz(8);
    CHECK(c.num_qubits == 8);
    CHECK(c.gates.size() == 8);
    CHECK(c.gates[0].name == "h");
    for (int i = 1; i < 8; ++i) {
        CHECK(c.gates[i].name == "cx");
        CHECK(c.gates[i].qubits == std::vector<int>{i - 1, i});
    }
    CHECK_THROWS_AS(gen_ghz(1), Error);
}

TEST_CASE("gen_bv layout follows the secret") {
    Circuit c = gen_bv("101");
    CHECK(c.num_qubits == 4);
    // h x3, x+h on ancilla, cx for bits 0 and 2, final h x3
    CHECK(c.gates.size() == 3 + 2 + 2 + 3);
    int cx_count = 0;
    for (const Gate& g : c.gates)
        if (g.name == "cx") {
            CHECK(g.qubits[1] == 3);  // ancilla is the last qubit
            ++cx_count;
        }
    CHECK(cx_count == 2);
    CHECK_THROWS_AS(gen_bv(""), Error);
    CHECK_THROWS_AS(gen_bv("10a"), Error);
}

TEST_CASE("gen_adder uses 2n+2 qubits and the cx-family basis") {
    Circuit c = gen_adder(3);
    CHECK(c.num_qubits == 8);
    for (const Gate& g : c.gates) {
        bool known = g.name == "h" || g.name == "t" || g.name == "tdg" || g.name == "cx";
        CHECK(known);
    }
    CHECK(gen_adder(94).num_qubits == 190);
    CHECK_THROWS_AS(gen_adder(0), Error);
}

TEST_CASE("gen_qft gate count and angles") {
    Circuit c = gen_qft(5);
    CHECK(c.num_qubits == 5);
    CHECK(c.gates.size() == 5 + 10);
    // first rotation after h(0) is cp(pi/2) between qubits 1 and 0
    CHECK(c.gates[1].name == "cp");
    CHECK(c.gates[1].params[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    Circuit s = gen_qft(5, true);
    CHECK(s.gates.size() == 15 + 2);
    CHECK(s.gates.back().name == "swap");
}

TEST_CASE("same_circuit distinguishes register size") {
    Circuit a = gen_ghz(4);
    Circuit b = gen_ghz(4);
    CHECK(same_circuit(a, b));
    b.num_qubits = 5;
    CHECK_FALSE(same_circuit(a, b));
}
