#include "cifold/knit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>

namespace cifold {

namespace {

using cd = std::complex<double>;

void apply_1q_matrix(StateVector& s, int q, const cd m[2][2]) {
    const uint64_t bit = uint64_t{1} << q;
    const uint64_t dim = s.amp.size();
    for (uint64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cd a0 = s.amp[i], a1 = s.amp[i | bit];
        s.amp[i] = m[0][0] * a0 + m[0][1] * a1;
        s.amp[i | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

}  // namespace

void apply_gate(StateVector& s, const Gate& g) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cd i1(0.0, 1.0);
    const std::string& n = g.name;

    if (g.qubits.size() == 2) {
        const uint64_t b0 = uint64_t{1} << g.qubits[0];
        const uint64_t b1 = uint64_t{1} << g.qubits[1];
        const uint64_t dim = s.amp.size();
        if (n == "cx") {
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & b0) && !(i & b1)) std::swap(s.amp[i], s.amp[i | b1]);
        } else if (n == "cz") {
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & b0) && (i & b1)) s.amp[i] = -s.amp[i];
        } else if (n == "cp") {
            const cd ph = std::exp(i1 * g.params[0]);
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & b0) && (i & b1)) s.amp[i] *= ph;
        } else if (n == "swap") {
            for (uint64_t i = 0; i < dim; ++i)
                if ((i & b0) && !(i & b1)) std::swap(s.amp[i], s.amp[(i & ~b0) | b1]);
        } else {
            throw Error("apply_gate: unsupported two-qubit gate: " + n);
        }
        return;
    }

    const int q = g.qubits[0];
    cd m[2][2] = {{1, 0}, {0, 1}};
    if (n == "h") {
        m[0][0] = m[0][1] = m[1][0] = inv_sqrt2;
        m[1][1] = -inv_sqrt2;
    } else if (n == "x") {
        m[0][0] = m[1][1] = 0;
        m[0][1] = m[1][0] = 1;
    } else if (n == "y") {
        m[0][0] = m[1][1] = 0;
        m[0][1] = -i1;
        m[1][0] = i1;
    } else if (n == "z") {
        m[1][1] = -1;
    } else if (n == "s") {
        m[1][1] = i1;
    } else if (n == "sdg") {
        m[1][1] = -i1;
    } else if (n == "t") {
        m[1][1] = std::exp(i1 * (std::numbers::pi / 4.0));
    } else if (n == "tdg") {
        m[1][1] = std::exp(-i1 * (std::numbers::pi / 4.0));
    } else if (n == "rx") {
        double h = g.params[0] / 2.0;
        m[0][0] = m[1][1] = std::cos(h);
        m[0][1] = m[1][0] = -i1 * std::sin(h);
    } else if (n == "ry") {
        double h = g.params[0] / 2.0;
        m[0][0] = m[1][1] = std::cos(h);
        m[0][1] = -std::sin(h);
        m[1][0] = std::sin(h);
    } else if (n == "rz") {
        double h = g.params[0] / 2.0;
        m[0][0] = std::exp(-i1 * h);
        m[1][1] = std::exp(i1 * h);
    } else if (n == "p") {
        m[1][1] = std::exp(i1 * g.params[0]);
    } else {
        throw Error("apply_gate: unsupported gate: " + n);
    }
    apply_1q_matrix(s, q, m);
}

StateVector simulate(const Circuit& c) {
    validate(c);
    if (c.num_qubits > kMaxSimQubits)
        throw Error("simulate: circuit exceeds the " + std::to_string(kMaxSimQubits) +
                    "-qubit simulator limit");
    StateVector s;
    s.num_qubits = c.num_qubits;
    s.amp.assign(uint64_t{1} << c.num_qubits, cd(0.0, 0.0));
    s.amp[0] = 1.0;
    for (const Gate& g : c.gates) apply_gate(s, g);
    return s;
}

double expectation(const StateVector& s, const Observable& o) {
    if (static_cast<int>(o.paulis.size()) != s.num_qubits)
        throw Error("expectation: observable length does not match the register");
    StateVector rot = s;
    uint64_t mask = 0;
    for (int q = 0; q < s.num_qubits; ++q) {
        char p = o.paulis[q];
        if (p == 'I') continue;
        if (p == 'Y') apply_gate(rot, Gate{"sdg", {}, {q}});
        if (p == 'X' || p == 'Y') apply_gate(rot, Gate{"h", {}, {q}});
        if (p != 'X' && p != 'Y' && p != 'Z')
            throw Error("expectation: bad Pauli character");
        mask |= uint64_t{1} << q;
    }
    double v = 0.0;
    for (uint64_t i = 0; i < rot.amp.size(); ++i) {
        double pr = std::norm(rot.amp[i]);
        v += (std::popcount(i & mask) & 1) ? -pr : pr;
    }
    return v;
}

namespace {

// Pauli eigenstate preparations from |0>: index order 0..5 =
// |0>, |1>, |+>, |->, |+i>, |-i>.
std::vector<Gate> prep_gates(int which) {
    switch (which) {
        case 0: return {};
        case 1: return {Gate{"x", {}, {0}}};
        case 2: return {Gate{"h", {}, {0}}};
        case 3: return {Gate{"x", {}, {0}}, Gate{"h", {}, {0}}};
        case 4: return {Gate{"h", {}, {0}}, Gate{"s", {}, {0}}};
        case 5: return {Gate{"x", {}, {0}}, Gate{"h", {}, {0}}, Gate{"s", {}, {0}}};
    }
    throw Error("prep_gates: bad state index");
}

}  // namespace

QpdDecomposition wire_cut_decomposition() {
    QpdDecomposition d;
    d.channel_kind = ChannelKind::Wire;
    d.gamma = 16.0;

    auto term = [&](double coef, std::vector<Gate> basis, bool measure, int prep) {
        QpdTerm t;
        t.coefficient = coef;
        t.left_op.before = std::move(basis);
        t.left_op.measure_z_signed = measure;
        t.right_op.prepare = prep;
        d.terms.push_back(std::move(t));
    };

    const Gate h{"h", {}, {0}};
    const Gate sdg{"sdg", {}, {0}};
    // rho = 1/2 [ Tr(rho) I + Tr(X rho) X + Tr(Y rho) Y + Tr(Z rho) Z ],
    // each Pauli split into its +/- eigenstate preparations.
    term(+0.5, {}, false, 0);
    term(+0.5, {}, false, 1);
    term(+0.5, {h}, true, 2);
    term(-0.5, {h}, true, 3);
    term(+0.5, {sdg, h}, true, 4);
    term(-0.5, {sdg, h}, true, 5);
    term(+0.5, {}, true, 0);
    term(-0.5, {}, true, 1);
    return d;
}

QpdDecomposition gate_cut_decomposition(const std::string& gate_name, double theta) {
    const bool hadamard_wrap = gate_name == "cx";
    if (gate_name == "cx" || gate_name == "cz") theta = std::numbers::pi;
    else if (gate_name != "cp")
        throw Error("gate_cut_decomposition: unsupported gate: " + gate_name);

    // cp(theta) = phase * exp(i theta/4 ZZ) (Rz(theta/2) x Rz(theta/2));
    // the ZZ rotation splits into identity/ZZ diagonal terms plus signed-Z
    // measurement cross terms paired with S / Sdg on the other side.
    const double t = theta / 4.0;
    const double c2 = std::cos(t) * std::cos(t);
    const double s2 = std::sin(t) * std::sin(t);
    const double sc = std::sin(t) * std::cos(t);

    const Gate rz{"rz", {theta / 2.0}, {0}};
    const Gate z{"z", {}, {0}};
    const Gate s{"s", {}, {0}};
    const Gate sdg{"sdg", {}, {0}};

    QpdDecomposition d;
    d.channel_kind = ChannelKind::Gate;
    d.gate_name = gate_name;
    d.gamma = (1.0 + 2.0 * std::abs(2.0 * sc)) * (1.0 + 2.0 * std::abs(2.0 * sc));

    auto term = [&](double coef, std::vector<Gate> left, bool lmeas, std::vector<Gate> right,
                    bool rmeas) {
        if (std::abs(coef) < 1e-15) return;
        QpdTerm qt;
        qt.coefficient = coef;
        qt.left_op.before = std::move(left);
        qt.left_op.measure_z_signed = lmeas;
        qt.right_op.before = std::move(right);
        qt.right_op.measure_z_signed = rmeas;
        d.terms.push_back(std::move(qt));
    };

    term(c2, {rz}, false, {rz}, false);
    term(s2, {rz, z}, false, {rz, z}, false);
    term(+sc, {rz}, true, {rz, sdg}, false);
    term(-sc, {rz}, true, {rz, s}, false);
    term(+sc, {rz, sdg}, false, {rz}, true);
    term(-sc, {rz, s}, false, {rz}, true);

    if (hadamard_wrap) {
        // cx = (I x H) cz (I x H): conjugate the target (right) side.
        const Gate h{"h", {}, {0}};
        for (QpdTerm& qt : d.terms) {
            qt.right_op.before.insert(qt.right_op.before.begin(), h);
            qt.right_op.after.push_back(h);
        }
    }
    return d;
}

namespace {

struct FragOp {
    enum Kind { Apply, CutHalf, WireUp } kind;
    int node = -1;  // ordering key (primary)
    int sub = 0;    // 0 = at the node, 1 = just after it
    Gate gate;      // Apply: gate rebound to local qubits
    int lq = -1;    // CutHalf / WireUp: local qubit
    int cut = -1;   // index into Partition.cuts
    int side = 0;   // 0 = left_op, 1 = right_op
};

struct FragProgram {
    int num_local = 0;
    std::vector<std::pair<int, int>> prep_slots;  // (cut index, local qubit) at segment starts
    std::vector<FragOp> ops;
    std::string local_obs;
    std::vector<int> touching_cuts;  // sorted, deduped
};

struct Branch {
    double sign;
    StateVector sv;
};

void apply_qpd_op(std::vector<Branch>& branches, const QpdOp& op, int lq) {
    for (Branch& b : branches)
        for (Gate g : op.before) {
            g.qubits = {lq};
            apply_gate(b.sv, g);
        }
    if (op.measure_z_signed) {
        const uint64_t bit = uint64_t{1} << lq;
        std::vector<Branch> split;
        split.reserve(branches.size() * 2);
        for (Branch& b : branches) {
            Branch lo{b.sign, b.sv}, hi{-b.sign, std::move(b.sv)};
            double n0 = 0.0, n1 = 0.0;
            for (uint64_t i = 0; i < lo.sv.amp.size(); ++i) {
                if (i & bit) {
                    lo.sv.amp[i] = 0.0;
                    n1 += std::norm(hi.sv.amp[i]);
                } else {
                    hi.sv.amp[i] = 0.0;
                    n0 += std::norm(lo.sv.amp[i]);
                }
            }
            if (n0 > 1e-300) split.push_back(std::move(lo));
            if (n1 > 1e-300) split.push_back(std::move(hi));
        }
        branches = std::move(split);
    }
    for (Branch& b : branches)
        for (Gate g : op.after) {
            g.qubits = {lq};
            apply_gate(b.sv, g);
        }
}

double eval_fragment(const FragProgram& fp, const std::vector<QpdDecomposition>& decomp,
                     const std::vector<int>& term_of_cut) {
    std::vector<Branch> branches(1);
    branches[0].sign = 1.0;
    branches[0].sv.num_qubits = fp.num_local;
    branches[0].sv.amp.assign(uint64_t{1} << fp.num_local, cd(0.0, 0.0));
    branches[0].sv.amp[0] = 1.0;

    for (const auto& [cut, lq] : fp.prep_slots) {
        int prep = decomp[cut].terms[term_of_cut[cut]].right_op.prepare;
        for (Gate g : prep_gates(prep)) {
            g.qubits = {lq};
            apply_gate(branches[0].sv, g);
        }
    }

    for (const FragOp& op : fp.ops) {
        if (op.kind == FragOp::Apply) {
            for (Branch& b : branches) apply_gate(b.sv, op.gate);
        } else {
            const QpdTerm& t = decomp[op.cut].terms[term_of_cut[op.cut]];
            const QpdOp& half =
                (op.kind == FragOp::WireUp || op.side == 0) ? t.left_op : t.right_op;
            apply_qpd_op(branches, half, op.lq);
        }
    }

    double v = 0.0;
    Observable obs{fp.local_obs};
    for (const Branch& b : branches) v += b.sign * expectation(b.sv, obs);
    return v;
}

}  // namespace

double reconstruct_expectation(const CircuitGraph& g, const Partition& p, const Observable& o,
                               ReconstructMode mode, long long shots, uint64_t seed) {
    if (static_cast<int>(o.paulis.size()) != g.num_qubits)
        throw Error("reconstruct_expectation: observable length does not match the register");
    if (p.frag_of.size() != g.nodes.size())
        throw Error("reconstruct_expectation: partition does not cover the graph");

    // One decomposition per cut, and edge index -> cut index.
    std::vector<QpdDecomposition> decomp;
    std::vector<int> cut_of_edge(g.edges.size(), -1);
    for (size_t ci = 0; ci < p.cuts.size(); ++ci) {
        const Cut& c = p.cuts[ci];
        cut_of_edge[c.edge_index] = static_cast<int>(ci);
        if (c.kind == EdgeKind::Wire) {
            decomp.push_back(wire_cut_decomposition());
        } else {
            const GraphNode& n = g.nodes[g.edges[c.edge_index].src];
            double theta = n.params.empty() ? 0.0 : n.params[0];
            decomp.push_back(gate_cut_decomposition(n.gate_name, theta));
        }
    }
    if (mode == ReconstructMode::Exact && static_cast<int>(p.cuts.size()) > kMaxExactCuts)
        throw Error("reconstruct_expectation: more than " + std::to_string(kMaxExactCuts) +
                    " cuts in exact mode");

    // Fragment programs: local segment numbering, ordered local ops, and the
    // local observable. A node opens a new segment when its wire predecessor
    // lies outside its fragment.
    const int nf = static_cast<int>(p.fragments.size());
    std::vector<FragProgram> programs(nf);
    std::vector<int> seg_of(g.nodes.size(), -1);  // node -> local qubit in its fragment

    for (int f = 0; f < nf; ++f) {
        FragProgram& fp = programs[f];
        for (int v : p.fragments[f].node_ids) {
            int pred = g.wire_pred(v);
            if (pred >= 0 && p.frag_of[pred] == f) {
                seg_of[v] = seg_of[pred];
                continue;
            }
            int lq = fp.num_local++;
            seg_of[v] = lq;
            if (pred >= 0) {
                // Mid-wire entry: the incoming wire edge is a cut; the segment
                // starts from that cut's prepared state.
                int ci = -1;
                for (const auto& [ei, nb] : g.adj[v])
                    if (nb == pred && g.edges[ei].kind == EdgeKind::Wire) ci = cut_of_edge[ei];
                if (ci < 0) throw Error("reconstruct_expectation: crossing wire edge is not a cut");
                fp.prep_slots.emplace_back(ci, lq);
                fp.touching_cuts.push_back(ci);
            }
        }
        if (fp.num_local > kMaxSimQubits)
            throw Error("reconstruct_expectation: fragment exceeds the " +
                        std::to_string(kMaxSimQubits) + "-qubit simulator limit");
        fp.local_obs.assign(fp.num_local, 'I');
    }

    for (int f = 0; f < nf; ++f) {
        FragProgram& fp = programs[f];
        for (int v : p.fragments[f].node_ids) {
            const GraphNode& n = g.nodes[v];
            int partner = g.gate_partner[v];
            if (partner < 0) {
                FragOp op;
                op.kind = FragOp::Apply;
                op.node = v;
                op.gate = Gate{n.gate_name, n.params, {seg_of[v]}};
                fp.ops.push_back(std::move(op));
            } else if (p.frag_of[partner] == f) {
                if (v < partner) {
                    // Gate operand order follows the gate edge: src is the
                    // first operand.
                    int ei = -1;
                    for (const auto& [e, nb] : g.adj[v])
                        if (nb == partner && g.edges[e].kind == EdgeKind::Gate) ei = e;
                    FragOp op;
                    op.kind = FragOp::Apply;
                    op.node = v;
                    op.gate = Gate{n.gate_name, n.params,
                                   {seg_of[g.edges[ei].src], seg_of[g.edges[ei].dst]}};
                    fp.ops.push_back(std::move(op));
                }
            } else {
                int ei = -1;
                for (const auto& [e, nb] : g.adj[v])
                    if (nb == partner && g.edges[e].kind == EdgeKind::Gate) ei = e;
                int ci = cut_of_edge[ei];
                if (ci < 0) throw Error("reconstruct_expectation: crossing gate edge is not a cut");
                FragOp op;
                op.kind = FragOp::CutHalf;
                op.node = v;
                op.lq = seg_of[v];
                op.cut = ci;
                op.side = g.edges[ei].src == v ? 0 : 1;
                fp.ops.push_back(std::move(op));
                fp.touching_cuts.push_back(ci);
            }
            int succ = g.wire_succ(v);
            if (succ >= 0 && p.frag_of[succ] != f) {
                int ei = -1;
                for (const auto& [e, nb] : g.adj[v])
                    if (nb == succ && g.edges[e].kind == EdgeKind::Wire) ei = e;
                int ci = cut_of_edge[ei];
                if (ci < 0) throw Error("reconstruct_expectation: crossing wire edge is not a cut");
                FragOp op;
                op.kind = FragOp::WireUp;
                op.node = v;
                op.sub = 1;
                op.lq = seg_of[v];
                op.cut = ci;
                fp.ops.push_back(std::move(op));
                fp.touching_cuts.push_back(ci);
            }
        }
        std::sort(fp.ops.begin(), fp.ops.end(), [](const FragOp& a, const FragOp& b) {
            return std::pair(a.node, a.sub) < std::pair(b.node, b.sub);
        });
        std::sort(fp.touching_cuts.begin(), fp.touching_cuts.end());
        fp.touching_cuts.erase(std::unique(fp.touching_cuts.begin(), fp.touching_cuts.end()),
                               fp.touching_cuts.end());
    }

    // The observable acts on each qubit's final segment; untouched qubits stay
    // in |0> and contribute <0|P|0>.
    double idle_factor = 1.0;
    for (int q = 0; q < g.num_qubits; ++q) {
        char pauli = o.paulis[q];
        if (g.wire_seq[q].empty()) {
            if (pauli == 'X' || pauli == 'Y') idle_factor = 0.0;
            continue;
        }
        if (pauli == 'I') continue;
        int last = g.wire_seq[q].back();
        programs[p.frag_of[last]].local_obs[seg_of[last]] = pauli;
    }
    if (idle_factor == 0.0) return 0.0;

    // Per-fragment value cache keyed by the term choices of its own cuts.
    std::vector<std::map<std::vector<int>, double>> memo(nf);
    auto fragment_value = [&](int f, const std::vector<int>& term_of_cut) {
        const FragProgram& fp = programs[f];
        std::vector<int> key;
        key.reserve(fp.touching_cuts.size());
        for (int c : fp.touching_cuts) key.push_back(term_of_cut[c]);
        auto it = memo[f].find(key);
        if (it != memo[f].end()) return it->second;
        double v = eval_fragment(fp, decomp, term_of_cut);
        memo[f].emplace(std::move(key), v);
        return v;
    };

    const int nc = static_cast<int>(p.cuts.size());
    std::vector<int> term_of_cut(nc, 0);

    if (mode == ReconstructMode::Exact) {
        long double total = 0.0;
        bool done = false;
        while (!done) {
            double coef = 1.0;
            for (int c = 0; c < nc; ++c) coef *= decomp[c].terms[term_of_cut[c]].coefficient;
            double prod = coef;
            for (int f = 0; f < nf && prod != 0.0; ++f) prod *= fragment_value(f, term_of_cut);
            total += prod;
            done = true;
            for (int c = 0; c < nc; ++c) {
                if (++term_of_cut[c] < static_cast<int>(decomp[c].terms.size())) {
                    done = false;
                    break;
                }
                term_of_cut[c] = 0;
            }
            if (nc == 0) break;
        }
        return static_cast<double>(total) * idle_factor;
    }

    // Sampled mode: draw one term per cut with probability |a_i| / sum |a|;
    // the estimate is sign(prod a) * prod(sum |a|) * prod fragment values.
    if (shots <= 0) throw Error("reconstruct_expectation: sampled mode needs a positive shot count");
    std::mt19937_64 rng(seed);
    std::vector<std::discrete_distribution<int>> draw;
    std::vector<double> abs_sum(nc, 1.0);
    for (int c = 0; c < nc; ++c) {
        std::vector<double> w;
        double total_abs = 0.0;
        for (const QpdTerm& t : decomp[c].terms) {
            w.push_back(std::abs(t.coefficient));
            total_abs += std::abs(t.coefficient);
        }
        abs_sum[c] = total_abs;
        draw.emplace_back(w.begin(), w.end());
    }
    long double acc = 0.0;
    for (long long s = 0; s < shots; ++s) {
        double value = 1.0;
        for (int c = 0; c < nc; ++c) {
            term_of_cut[c] = draw[c](rng);
            double a = decomp[c].terms[term_of_cut[c]].coefficient;
            value *= abs_sum[c] * (a < 0.0 ? -1.0 : 1.0);
        }
        for (int f = 0; f < nf && value != 0.0; ++f) value *= fragment_value(f, term_of_cut);
        acc += value;
    }
    return static_cast<double>(acc / shots) * idle_factor;
}

double reconstruct_expectation(const Circuit& c, const Partition& p, const Observable& o,
                               ReconstructMode mode, long long shots, uint64_t seed) {
    return reconstruct_expectation(build_circuit_graph(c), p, o, mode, shots, seed);
}

}  // namespace cifold
