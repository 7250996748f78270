#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cifold/circuit.hpp"

namespace cifold {

enum class NodeRole { Single, Control, Target, SymHalf };

/// One role-node of a gate. Single-qubit gates contribute one node;
/// two-qubit gates contribute two (one per operand qubit, same gate_ref).
struct GraphNode {
    int id;
    int gate_ref;  // index into Circuit.gates
    std::string gate_name;
    std::vector<double> params;
    int qubit;
    NodeRole role;
};

enum class EdgeKind { Wire, Gate };

/// Wire edges are directed along program order on one qubit; gate edges
/// join the two halves of a two-qubit gate. weight = gamma_lookup(kind, name).
struct GraphEdge {
    int src;
    int dst;
    EdgeKind kind;
    double weight;
};

struct CircuitGraph {
    std::vector<GraphNode> nodes;  // node id == index, assigned in program order
    std::vector<GraphEdge> edges;
    int num_qubits = 0;
    std::vector<int> qubit_heads;  // first node id per qubit, -1 if none

    // Derived lookups, filled by build_circuit_graph.
    std::vector<std::vector<int>> wire_seq;             // per qubit: node ids in order
    std::vector<int> wire_pos;                          // node -> index in its wire_seq
    std::vector<int> gate_partner;                      // node -> other half, -1 for 1q
    std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (edge index, neighbor)

    int wire_pred(int node) const {
        int p = wire_pos[node];
        return p > 0 ? wire_seq[nodes[node].qubit][p - 1] : -1;
    }
    int wire_succ(int node) const {
        const auto& seq = wire_seq[nodes[node].qubit];
        int p = wire_pos[node];
        return p + 1 < static_cast<int>(seq.size()) ? seq[p + 1] : -1;
    }
};

CircuitGraph build_circuit_graph(const Circuit& c);

/// Wire path of one qubit. Two-qubit gates show up in exactly two of these.
struct QubitGraph {
    int qubit;
    std::vector<int> sequence;
};

std::vector<QubitGraph> extract_qubit_graphs(const CircuitGraph& g);

std::string export_dot(const CircuitGraph& g);

}  // namespace cifold
