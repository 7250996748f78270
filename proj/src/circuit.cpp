#include "cifold/circuit.hpp"

#include <cmath>
#include <numbers>

namespace cifold {

const std::map<std::string, GateSpec>& gate_table() {
    static const std::map<std::string, GateSpec> table = {
        {"h", {1, 0, false}},   {"x", {1, 0, false}},    {"y", {1, 0, false}},
        {"z", {1, 0, false}},   {"s", {1, 0, false}},    {"t", {1, 0, false}},
        {"sdg", {1, 0, false}}, {"tdg", {1, 0, false}},  {"rx", {1, 1, false}},
        {"ry", {1, 1, false}},  {"rz", {1, 1, false}},   {"p", {1, 1, false}},
        {"cx", {2, 0, false}},  {"cz", {2, 0, true}},    {"cp", {2, 1, true}},
        {"swap", {2, 0, true}},
    };
    return table;
}

bool same_gate(const Gate& a, const Gate& b) {
    if (a.name != b.name || a.qubits != b.qubits || a.params.size() != b.params.size())
        return false;
    for (size_t i = 0; i < a.params.size(); ++i)
        if (std::abs(a.params[i] - b.params[i]) > kAngleTolerance) return false;
    return true;
}

void Circuit::add(std::string name, std::vector<int> qubits, std::vector<double> params) {
    gates.push_back(Gate{std::move(name), std::move(params), std::move(qubits)});
}

bool same_circuit(const Circuit& a, const Circuit& b) {
    if (a.num_qubits != b.num_qubits || a.gates.size() != b.gates.size()) return false;
    for (size_t i = 0; i < a.gates.size(); ++i)
        if (!same_gate(a.gates[i], b.gates[i])) return false;
    return true;
}

void validate(const Circuit& c) {
    if (c.num_qubits <= 0) throw Error("circuit has no qubits");
    for (const Gate& g : c.gates) {
        auto it = gate_table().find(g.name);
        if (it == gate_table().end()) throw Error("unsupported gate: " + g.name);
        const GateSpec& spec = it->second;
        if (static_cast<int>(g.qubits.size()) != spec.arity)
            throw Error("gate " + g.name + ": wrong operand count");
        if (static_cast<int>(g.params.size()) != spec.num_params)
            throw Error("gate " + g.name + ": wrong parameter count");
        if (spec.arity == 2 && g.qubits[0] == g.qubits[1])
            throw Error("gate " + g.name + ": duplicate qubit operand");
        for (int q : g.qubits)
            if (q < 0 || q >= c.num_qubits)
                throw Error("gate " + g.name + ": qubit index out of range");
    }
}

Circuit gen_ghz(int n) {
    if (n < 2) throw Error("gen_ghz: n must be >= 2");
    Circuit c;
    c.num_qubits = n;
    c.add("h", {0});
    for (int i = 0; i + 1 < n; ++i) c.add("cx", {i, i + 1});
    return c;
}

Circuit gen_bv(const std::string& secret) {
    if (secret.empty()) throw Error("gen_bv: empty secret");
    for (char ch : secret)
        if (ch != '0' && ch != '1') throw Error("gen_bv: secret must be a bit string");
    const int n = static_cast<int>(secret.size());
    Circuit c;
    c.num_qubits = n + 1;
    const int ancilla = n;
    for (int i = 0; i < n; ++i) c.add("h", {i});
    c.add("x", {ancilla});
    c.add("h", {ancilla});
    for (int i = 0; i < n; ++i)
        if (secret[i] == '1') c.add("cx", {i, ancilla});
    for (int i = 0; i < n; ++i) c.add("h", {i});
    return c;
}

namespace {

// Standard Toffoli decomposition into {h, t, tdg, cx}.
void add_ccx(Circuit& c, int a, int b, int tgt) {
    c.add("h", {tgt});
    c.add("cx", {b, tgt});
    c.add("tdg", {tgt});
    c.add("cx", {a, tgt});
    c.add("t", {tgt});
    c.add("cx", {b, tgt});
    c.add("tdg", {tgt});
    c.add("cx", {a, tgt});
    c.add("t", {b});
    c.add("t", {tgt});
    c.add("h", {tgt});
    c.add("cx", {a, b});
    c.add("t", {a});
    c.add("tdg", {b});
    c.add("cx", {a, b});
}

void add_maj(Circuit& c, int x, int y, int z) {
    c.add("cx", {z, y});
    c.add("cx", {z, x});
    add_ccx(c, x, y, z);
}

void add_uma(Circuit& c, int x, int y, int z) {
    add_ccx(c, x, y, z);
    c.add("cx", {z, x});
    c.add("cx", {x, y});
}

}  // namespace

Circuit gen_adder(int n) {
    if (n < 1) throw Error("gen_adder: n must be >= 1");
    Circuit c;
    c.num_qubits = 2 * n + 2;
    const int cin = 0;
    const int cout = 2 * n + 1;
    auto b = [](int i) { return 1 + 2 * i; };
    auto a = [](int i) { return 2 + 2 * i; };

    add_maj(c, cin, b(0), a(0));
    for (int i = 1; i < n; ++i) add_maj(c, a(i - 1), b(i), a(i));
    c.add("cx", {a(n - 1), cout});
    for (int i = n - 1; i >= 1; --i) add_uma(c, a(i - 1), b(i), a(i));
    add_uma(c, cin, b(0), a(0));
    return c;
}

Circuit gen_qft(int n, bool with_swaps) {
    if (n < 1) throw Error("gen_qft: n must be >= 1");
    Circuit c;
    c.num_qubits = n;
    for (int i = 0; i < n; ++i) {
        c.add("h", {i});
        for (int j = i + 1; j < n; ++j)
            c.add("cp", {j, i}, {std::numbers::pi / std::pow(2.0, j - i)});
    }
    if (with_swaps)
        for (int i = 0; i < n / 2; ++i) c.add("swap", {i, n - 1 - i});
    return c;
}

}  // namespace cifold
