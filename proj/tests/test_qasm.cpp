#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "cifold/circuit.hpp"
#include "cifold/qasm.hpp"

using namespace cifold;

TEST_CASE("round trip preserves every generator") {
    for (const Circuit& c : {gen_ghz(6), gen_bv("10110"), gen_adder(4), gen_qft(6, true)}) {
        Circuit back = parse_qasm(write_qasm(c));
        CHECK(same_circuit(c, back));
    }
}

TEST_CASE("basic program parses") {
    Circuit c = parse_qasm(R"(OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
h q[0];
cx q[0],q[1];
rz(pi/2) q[2];
)");
    CHECK(c.num_qubits == 3);
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[2].name == "rz");
    CHECK(c.gates[2].params[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
}

TEST_CASE("angle expressions") {
    Circuit c = parse_qasm(R"(OPENQASM 2.0;
qreg q[1];
p(2*pi/8) q[0];
p(-pi/4) q[0];
p(0.25) q[0];
p((pi)) q[0];
p(3+1/2) q[0];
)");
    REQUIRE(c.gates.size() == 5);
    CHECK(c.gates[0].params[0] == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
    CHECK(c.gates[1].params[0] == doctest::Approx(-std::numbers::pi / 4).epsilon(1e-12));
    CHECK(c.gates[2].params[0] == doctest::Approx(0.25));
    CHECK(c.gates[3].params[0] == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(c.gates[4].params[0] == doctest::Approx(3.5));
}

TEST_CASE("u1 is accepted as p") {
    Circuit c = parse_qasm("OPENQASM 2.0;\nqreg q[1];\nu1(pi) q[0];\n");
    REQUIRE(c.gates.size() == 1);
    CHECK(c.gates[0].name == "p");
}

TEST_CASE("creg, measure, barrier and comments are dropped") {
    Circuit c = parse_qasm(R"(OPENQASM 2.0;
// leading comment
qreg q[2];
creg c[2];
h q[0]; // trailing comment
barrier q[0],q[1];
measure q[0] -> c[0];
cx q[0],q[1];
)");
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].name == "h");
    CHECK(c.gates[1].name == "cx");
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_qasm("qreg q[2];\n"), QasmError);              // missing header
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nh q[0];\n"), QasmError);  // gate before qreg
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n"), QasmError);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n"), QasmError);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n"), QasmError);
    try {
        parse_qasm("OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n");
        FAIL("expected QasmError");
    } catch (const QasmError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("write_qasm keeps full angle precision") {
    Circuit c;
    c.num_qubits = 1;
    c.add("rz", {0}, {0.1234567890123456789});
    Circuit back = parse_qasm(write_qasm(c));
    CHECK(back.gates[0].params[0] == doctest::Approx(c.gates[0].params[0]).epsilon(1e-16));
}
