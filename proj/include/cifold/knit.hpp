#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cifold/circuit.hpp"
#include "cifold/graph.hpp"
#include "cifold/partition.hpp"

namespace cifold {

/// Exact amplitudes over qubit-little-endian basis states (qubit q = bit q).
struct StateVector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amp;
};

inline constexpr int kMaxSimQubits = 14;

/// Apply one gate in place; qubit operands are taken from the gate.
void apply_gate(StateVector& s, const Gate& g);

/// Exact simulation from |0...0>. Throws for more than kMaxSimQubits qubits.
StateVector simulate(const Circuit& c);

/// <psi|P|psi> for a Pauli string; X/Y handled by basis pre-rotation.
double expectation(const StateVector& s, const Observable& o);

enum class ChannelKind { Wire, Gate };

/// Fragment-local operation on a single qubit inside one QPD term.
/// Order of effects: `before` unitaries, optional signed projective Z
/// measurement (the qubit survives, the branch sign multiplies the term),
/// then `after` unitaries. `prepare` replaces |0> at a segment start with a
/// Pauli eigenstate: 0:|0> 1:|1> 2:|+> 3:|-> 4:|+i> 5:|-i>.
struct QpdOp {
    std::vector<Gate> before;
    bool measure_z_signed = false;
    std::vector<Gate> after;
    int prepare = -1;
};

struct QpdTerm {
    double coefficient;
    QpdOp left_op;   // first gate operand / upstream wire end
    QpdOp right_op;  // second gate operand / downstream wire start
};

struct QpdDecomposition {
    std::vector<QpdTerm> terms;
    double gamma;  // (sum |a_i|)^2
    ChannelKind channel_kind;
    std::string gate_name;  // empty for wire cuts
};

/// Eight-term measure-and-prepare identity channel; gamma = 16.
QpdDecomposition wire_cut_decomposition();

/// Local-operation decomposition of a two-qubit gate channel. Supports
/// cx, cz and cp(theta); gamma = 9 for cx/cz.
QpdDecomposition gate_cut_decomposition(const std::string& gate_name, double theta = 0.0);

enum class ReconstructMode { Exact, Sampled };

inline constexpr int kMaxExactCuts = 4;

/// Evaluate the cut circuit over QPD terms and recombine fragment
/// expectations into the observable value of the uncut circuit. Exact mode
/// enumerates the full term-combination lattice; sampled mode draws term
/// assignments with probability proportional to |a_i| (seeded).
double reconstruct_expectation(const CircuitGraph& g, const Partition& p, const Observable& o,
                               ReconstructMode mode = ReconstructMode::Exact,
                               long long shots = 100000, uint64_t seed = 0);

/// Convenience overload: builds the circuit graph internally. The partition
/// must have been produced from the same circuit.
double reconstruct_expectation(const Circuit& c, const Partition& p, const Observable& o,
                               ReconstructMode mode = ReconstructMode::Exact,
                               long long shots = 100000, uint64_t seed = 0);

}  // namespace cifold
