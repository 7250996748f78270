#include "cifold/fold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

namespace cifold {

NodeLabel node_label(const CircuitGraph& g, int node_id) {
    const GraphNode& n = g.nodes[node_id];
    NodeLabel label;
    label.gate_name = n.gate_name;
    label.qparams.reserve(n.params.size());
    for (double p : n.params) label.qparams.push_back(std::llround(p / kAngleTolerance));
    label.role = n.role;
    int partner = g.gate_partner[node_id];
    if (partner >= 0) label.partner_kind = g.nodes[partner].gate_name;
    return label;
}

namespace {

// Generic LCCS over any equality-comparable sequence. Rolling one-row DP.
template <typename Seq>
std::optional<LccsMatch> lccs_impl(const Seq& s1, const Seq& s2, int min_len) {
    const int m = static_cast<int>(s1.size());
    const int n = static_cast<int>(s2.size());
    if (m == 0 || n == 0) return std::nullopt;
    std::vector<int> prev(n + 1, 0), cur(n + 1, 0);
    int best_len = 0, best_i = 0, best_j = 0;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (s1[i - 1] == s2[j - 1]) {
                cur[j] = prev[j - 1] + 1;
                if (cur[j] > best_len) {
                    best_len = cur[j];
                    best_i = i;
                    best_j = j;
                }
            } else {
                cur[j] = 0;
            }
        }
        std::swap(prev, cur);
    }
    if (best_len < min_len) return std::nullopt;
    return LccsMatch{best_i - best_len, best_j - best_len, best_len};
}

}  // namespace

std::optional<LccsMatch> lccs(const std::vector<NodeLabel>& s1, const std::vector<NodeLabel>& s2,
                              int min_len) {
    return lccs_impl(s1, s2, min_len);
}

std::optional<LccsMatch> lccs_ids(const std::vector<int>& s1, const std::vector<int>& s2,
                                  int min_len) {
    return lccs_impl(s1, s2, min_len);
}

std::vector<std::pair<int, int>> most_entangled_pairs(const std::vector<FoldGroup>& groups,
                                                      const CircuitGraph& g) {
    const int k = static_cast<int>(groups.size());
    std::vector<int> group_of_qubit(g.num_qubits, -1);
    for (int i = 0; i < k; ++i)
        for (int q : groups[i].qubits) group_of_qubit[q] = i;

    // Pair weight = number of two-qubit gates spanning the two groups.
    std::map<std::pair<int, int>, int> weight;
    for (const GraphEdge& e : g.edges) {
        if (e.kind != EdgeKind::Gate) continue;
        int a = group_of_qubit[g.nodes[e.src].qubit];
        int b = group_of_qubit[g.nodes[e.dst].qubit];
        if (a == b || a < 0 || b < 0) continue;
        weight[{std::min(a, b), std::max(a, b)}]++;
    }

    struct Cand {
        int w, ida, idb, i, j;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto it = weight.find({i, j});
            int w = it == weight.end() ? 0 : it->second;
            int ida = std::min(groups[i].id, groups[j].id);
            int idb = std::max(groups[i].id, groups[j].id);
            cands.push_back(Cand{w, ida, idb, i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.w != b.w) return a.w > b.w;
        if (a.ida != b.ida) return a.ida < b.ida;
        return a.idb < b.idb;
    });

    std::vector<bool> taken(k, false);
    std::vector<std::pair<int, int>> pairs;
    for (const Cand& c : cands) {
        if (taken[c.i] || taken[c.j]) continue;
        taken[c.i] = taken[c.j] = true;
        pairs.emplace_back(c.i, c.j);
    }
    return pairs;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Folds b's class into a's; a's representative survives.
    void fold_into(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[rb] = ra;
    }
};

// Repeated-run folding inside one sequence: find the longest pair of equal,
// non-overlapping runs, fold the later occurrence into the earlier one, then
// recurse on the prefix up to the first occurrence's end.
void self_fold(const std::vector<int>& labels, const std::vector<int>& nodes, int hi, int min_len,
               UnionFind& uf) {
    while (hi >= 2 * min_len) {
        int best_len = 0, best_i = 0, best_j = 0;
        std::vector<int> prev(hi, 0), cur(hi, 0);
        for (int i = 1; i < hi; ++i) {  // i = end index of second occurrence (0-based)
            for (int j = 0; j < i; ++j) {
                int run = 0;
                if (labels[i] == labels[j]) run = (j > 0 && i > 0 ? prev[j - 1] : 0) + 1;
                cur[j] = run;
                int capped = std::min(run, i - j);  // cap keeps occurrences disjoint
                if (capped > best_len) {
                    best_len = capped;
                    best_i = i;
                    best_j = j;
                }
            }
            std::swap(prev, cur);
        }
        if (best_len < min_len) return;
        int start1 = best_j - best_len + 1;
        int start2 = best_i - best_len + 1;
        for (int k = 0; k < best_len; ++k) uf.fold_into(nodes[start1 + k], nodes[start2 + k]);
        hi = start1 + best_len;  // recurse on the first occurrence's prefix
    }
}

}  // namespace

MetaGraph fold(const std::vector<QubitGraph>& graphs, const CircuitGraph& g, int min_len,
               int threads) {
    if (min_len < 1) throw Error("fold: min_len must be >= 1");
    const int num_nodes = static_cast<int>(g.nodes.size());

    // Intern labels so sequence comparison is integer equality.
    std::map<NodeLabel, int> interned;
    std::vector<int> label_of(num_nodes);
    for (int v = 0; v < num_nodes; ++v) {
        NodeLabel l = node_label(g, v);
        auto [it, _] = interned.emplace(std::move(l), static_cast<int>(interned.size()));
        label_of[v] = it->second;
    }

    UnionFind uf(num_nodes);

    std::vector<FoldGroup> groups;
    for (const QubitGraph& qg : graphs) groups.push_back(FoldGroup{qg.qubit, {qg.qubit}, qg.sequence});

    while (groups.size() > 1) {
        auto pairs = most_entangled_pairs(groups, g);

        // LCCS per pair is independent (disjoint node sets); run them on
        // worker threads, then apply folds in canonical pair order.
        std::vector<std::optional<LccsMatch>> matches(pairs.size());
        auto run_range = [&](size_t lo, size_t hi) {
            std::vector<int> s1, s2;
            for (size_t p = lo; p < hi; ++p) {
                const FoldGroup& a = groups[pairs[p].first];
                const FoldGroup& b = groups[pairs[p].second];
                s1.clear();
                s2.clear();
                for (int v : a.seq) s1.push_back(label_of[v]);
                for (int v : b.seq) s2.push_back(label_of[v]);
                matches[p] = lccs_ids(s1, s2, min_len);
            }
        };
        int workers = std::max(1, std::min<int>(threads, static_cast<int>(pairs.size())));
        if (workers <= 1) {
            run_range(0, pairs.size());
        } else {
            std::vector<std::thread> pool;
            size_t chunk = (pairs.size() + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                size_t lo = w * chunk;
                size_t hi = std::min(pairs.size(), lo + chunk);
                if (lo < hi) pool.emplace_back(run_range, lo, hi);
            }
            for (auto& t : pool) t.join();
        }

        // Canonical application order: by smaller group id.
        std::vector<size_t> order(pairs.size());
        for (size_t p = 0; p < order.size(); ++p) order[p] = p;
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            return std::min(groups[pairs[x].first].id, groups[pairs[x].second].id) <
                   std::min(groups[pairs[y].first].id, groups[pairs[y].second].id);
        });

        std::vector<FoldGroup> next;
        std::vector<bool> consumed(groups.size(), false);
        for (size_t p : order) {
            FoldGroup& a = groups[pairs[p].first];
            FoldGroup& b = groups[pairs[p].second];
            FoldGroup* first = a.id < b.id ? &a : &b;
            FoldGroup* second = a.id < b.id ? &b : &a;
            if (matches[p]) {
                // Fold the matched run of the higher-id group into the lower-id one.
                const LccsMatch& m = *matches[p];
                int sa = (first == &a) ? m.start1 : m.start2;
                int sb = (first == &a) ? m.start2 : m.start1;
                for (int k = 0; k < m.len; ++k)
                    uf.fold_into(first->seq[sa + k], second->seq[sb + k]);
            }
            FoldGroup merged;
            merged.id = first->id;
            merged.qubits = first->qubits;
            merged.qubits.insert(merged.qubits.end(), second->qubits.begin(), second->qubits.end());
            merged.seq = first->seq;
            merged.seq.insert(merged.seq.end(), second->seq.begin(), second->seq.end());
            next.push_back(std::move(merged));
            consumed[pairs[p].first] = consumed[pairs[p].second] = true;
        }
        for (size_t i = 0; i < groups.size(); ++i)
            if (!consumed[i]) next.push_back(std::move(groups[i]));
        std::sort(next.begin(), next.end(),
                  [](const FoldGroup& x, const FoldGroup& y) { return x.id < y.id; });
        groups = std::move(next);
    }

    // Final pass: fold repeated runs inside each individual qubit sequence.
    for (const QubitGraph& qg : graphs) {
        std::vector<int> labels;
        labels.reserve(qg.sequence.size());
        for (int v : qg.sequence) labels.push_back(label_of[v]);
        self_fold(labels, qg.sequence, static_cast<int>(labels.size()), min_len, uf);
    }

    // Materialize the meta-graph from the union-find classes.
    MetaGraph mg;
    mg.rep_of.resize(num_nodes);
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < num_nodes; ++v) {
        int r = uf.find(v);
        mg.rep_of[v] = r;
        classes[r].push_back(v);
    }
    mg.meta_index.resize(num_nodes);
    for (auto& [rep, members] : classes) {
        int idx = static_cast<int>(mg.meta_nodes.size());
        for (int v : members) mg.meta_index[v] = idx;
        mg.meta_nodes.push_back(MetaNode{rep, std::move(members), 0});
        mg.meta_nodes.back().fold_weight = static_cast<int>(mg.meta_nodes.back().folded_nodes.size());
    }

    std::map<std::tuple<int, int, int>, double> edge_set;
    for (const GraphEdge& e : g.edges) {
        int u = mg.rep_of[e.src], v = mg.rep_of[e.dst];
        if (e.kind == EdgeKind::Gate && u > v) std::swap(u, v);  // gate edges undirected
        edge_set.emplace(std::make_tuple(u, v, static_cast<int>(e.kind)), e.weight);
    }
    for (const auto& [key, w] : edge_set)
        mg.meta_edges.push_back(
            GraphEdge{std::get<0>(key), std::get<1>(key), static_cast<EdgeKind>(std::get<2>(key)), w});
    return mg;
}

std::string export_dot(const MetaGraph& mg, const CircuitGraph& g) {
    std::ostringstream out;
    out << "digraph meta {\n";
    for (const MetaNode& m : mg.meta_nodes) {
        const GraphNode& n = g.nodes[m.representative];
        out << "  n" << m.representative << " [label=\"" << n.gate_name;
        if (!n.params.empty()) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "(%.4g)", n.params[0]);
            out << buf;
        }
        if (m.fold_weight > 1) out << " x" << m.fold_weight;
        out << "\"];\n";
    }
    for (const GraphEdge& e : mg.meta_edges) {
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
