#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cifold {

/// Base error type for everything the library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Absolute tolerance used whenever two gate angles are compared.
inline constexpr double kAngleTolerance = 1e-9;

/// Static description of a supported gate name.
struct GateSpec {
    int arity;       // number of qubit operands (1 or 2)
    int num_params;  // number of angle parameters
    bool symmetric;  // two-qubit gate acts identically on both operands
};

/// Table of supported gates: h x y z s t sdg tdg rx ry rz p cx cz cp swap.
const std::map<std::string, GateSpec>& gate_table();

/// A single gate application. Angles are radians.
struct Gate {
    std::string name;
    std::vector<double> params;
    std::vector<int> qubits;

    bool is_two_qubit() const { return qubits.size() == 2; }
};

bool same_gate(const Gate& a, const Gate& b);

/// Ordered gate list over a fixed-size qubit register.
struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    void add(std::string name, std::vector<int> qubits, std::vector<double> params = {});
};

bool same_circuit(const Circuit& a, const Circuit& b);

/// Throws Error if a gate is unsupported, has a bad operand count,
/// repeats a qubit operand, or indexes outside the register.
void validate(const Circuit& c);

/// Per-qubit Pauli string, one character from {I, X, Y, Z} per qubit.
struct Observable {
    std::string paulis;

    static Observable all_z(int n) { return Observable{std::string(n, 'Z')}; }
};

// Benchmark generators. All emit only 1- and 2-qubit gates.

/// h(0) then a cx chain: n gates on n qubits.
Circuit gen_ghz(int n);

/// Bernstein-Vazirani for the given secret. secret[i] maps to data qubit i;
/// the last qubit is the ancilla.
Circuit gen_bv(const std::string& secret);

/// Cuccaro ripple-carry adder on 2n+2 qubits with Toffolis pre-decomposed
/// into {h, t, tdg, cx}. Layout: qubit 0 = carry-in, then b0,a0,b1,a1,...,
/// last qubit = carry-out. The sum ends up in the b register + carry-out.
Circuit gen_adder(int n);

/// QFT without the terminal swap network unless requested:
/// n + n(n-1)/2 gates (+ floor(n/2) swaps when with_swaps).
Circuit gen_qft(int n, bool with_swaps = false);

}  // namespace cifold
