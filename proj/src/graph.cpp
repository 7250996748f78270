#include "cifold/graph.hpp"

#include <cstdio>
#include <sstream>

#include "cifold/cost.hpp"

namespace cifold {

CircuitGraph build_circuit_graph(const Circuit& c) {
    validate(c);
    CircuitGraph g;
    g.num_qubits = c.num_qubits;
    g.qubit_heads.assign(c.num_qubits, -1);
    g.wire_seq.assign(c.num_qubits, {});
    const GammaTable table;

    std::vector<int> last_on_qubit(c.num_qubits, -1);
    auto add_node = [&](int gate_ref, const Gate& gate, int qubit, NodeRole role) {
        int id = static_cast<int>(g.nodes.size());
        g.nodes.push_back(GraphNode{id, gate_ref, gate.name, gate.params, qubit, role});
        if (g.qubit_heads[qubit] < 0) g.qubit_heads[qubit] = id;
        if (last_on_qubit[qubit] >= 0)
            g.edges.push_back(GraphEdge{last_on_qubit[qubit], id, EdgeKind::Wire,
                                        gamma_lookup(EdgeKind::Wire, "", table)});
        last_on_qubit[qubit] = id;
        g.wire_seq[qubit].push_back(id);
        return id;
    };

    for (size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& gate = c.gates[i];
        if (gate.is_two_qubit()) {
            bool sym = gate_table().at(gate.name).symmetric;
            int u = add_node(static_cast<int>(i), gate, gate.qubits[0],
                             sym ? NodeRole::SymHalf : NodeRole::Control);
            int v = add_node(static_cast<int>(i), gate, gate.qubits[1],
                             sym ? NodeRole::SymHalf : NodeRole::Target);
            g.edges.push_back(
                GraphEdge{u, v, EdgeKind::Gate, gamma_lookup(EdgeKind::Gate, gate.name, table)});
        } else {
            add_node(static_cast<int>(i), gate, gate.qubits[0], NodeRole::Single);
        }
    }

    g.wire_pos.assign(g.nodes.size(), 0);
    for (int q = 0; q < c.num_qubits; ++q)
        for (size_t p = 0; p < g.wire_seq[q].size(); ++p) g.wire_pos[g.wire_seq[q][p]] = static_cast<int>(p);

    g.gate_partner.assign(g.nodes.size(), -1);
    g.adj.assign(g.nodes.size(), {});
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const GraphEdge& edge = g.edges[e];
        g.adj[edge.src].emplace_back(static_cast<int>(e), edge.dst);
        g.adj[edge.dst].emplace_back(static_cast<int>(e), edge.src);
        if (edge.kind == EdgeKind::Gate) {
            g.gate_partner[edge.src] = edge.dst;
            g.gate_partner[edge.dst] = edge.src;
        }
    }
    return g;
}

std::vector<QubitGraph> extract_qubit_graphs(const CircuitGraph& g) {
    std::vector<QubitGraph> out;
    out.reserve(g.num_qubits);
    for (int q = 0; q < g.num_qubits; ++q) out.push_back(QubitGraph{q, g.wire_seq[q]});
    return out;
}

std::string export_dot(const CircuitGraph& g) {
    std::ostringstream out;
    out << "digraph circuit {\n";
    for (const GraphNode& n : g.nodes) {
        out << "  n" << n.id << " [label=\"" << n.gate_name;
        if (!n.params.empty()) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "(%.4g)", n.params[0]);
            out << buf;
        }
        out << " q" << n.qubit << "\"];\n";
    }
    for (const GraphEdge& e : g.edges) {
        if (e.kind == EdgeKind::Wire)
            out << "  n" << e.src << " -> n" << e.dst << " [label=\"wire " << e.weight << "\"];\n";
        else
            out << "  n" << e.src << " -> n" << e.dst << " [dir=none,label=\"gate " << e.weight
                << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace cifold
