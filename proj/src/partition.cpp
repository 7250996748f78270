#include "cifold/partition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

#include "cifold/cost.hpp"

namespace cifold {

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t fnv_bytes(uint64_t h, const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

uint64_t fnv_u64(uint64_t h, uint64_t v) { return fnv_bytes(h, &v, sizeof v); }

uint64_t label_color(const CircuitGraph& g, int node) {
    NodeLabel l = node_label(g, node);
    uint64_t h = kFnvOffset;
    h = fnv_bytes(h, l.gate_name.data(), l.gate_name.size());
    for (long long q : l.qparams) h = fnv_u64(h, static_cast<uint64_t>(q));
    h = fnv_u64(h, static_cast<uint64_t>(l.role));
    h = fnv_bytes(h, l.partner_kind.data(), l.partner_kind.size());
    return h;
}

}  // namespace

int node_set_width(const std::vector<bool>& in_set, const std::vector<int>& nodes,
                   const CircuitGraph& g) {
    int width = 0;
    for (int v : nodes) {
        int p = g.wire_pred(v);
        if (p < 0 || !in_set[p]) ++width;
    }
    return width;
}

namespace {

struct WidthDepth {
    int width;
    int depth;
};

// Width = number of wire segments; depth = ASAP layers over the fragment's
// gates plus one layer per wire-cut prepare (segment opened mid-wire) and
// per wire-cut measure (segment closed mid-wire).
template <typename InFrag>
WidthDepth width_depth(const std::vector<int>& nodes_sorted, const CircuitGraph& g,
                       InFrag in_frag) {
    std::unordered_map<int, int> seg_of;
    seg_of.reserve(nodes_sorted.size() * 2);
    std::vector<int> clock;
    for (int v : nodes_sorted) {
        int p = g.wire_pred(v);
        if (p >= 0 && in_frag(p)) {
            seg_of[v] = seg_of[p];
        } else {
            seg_of[v] = static_cast<int>(clock.size());
            clock.push_back(p >= 0 ? 1 : 0);  // prepare op opens a mid-wire segment
        }
    }
    for (int v : nodes_sorted) {
        int partner = g.gate_partner[v];
        if (partner >= 0 && in_frag(partner)) {
            if (partner < v) continue;  // handled at the first half
            int s1 = seg_of[v], s2 = seg_of[partner];
            int t = std::max(clock[s1], clock[s2]) + 1;
            clock[s1] = t;
            clock[s2] = t;
        } else {
            clock[seg_of[v]] += 1;  // 1q gate or the local op replacing a cut gate
        }
    }
    for (int v : nodes_sorted) {
        int s = g.wire_succ(v);
        if (s >= 0 && !in_frag(s)) clock[seg_of[v]] += 1;  // measure closes the segment
    }
    WidthDepth wd{static_cast<int>(clock.size()), 0};
    for (int c : clock) wd.depth = std::max(wd.depth, c);
    return wd;
}

}  // namespace

Partition finalize_partition(const std::vector<int>& frag_of_raw, const CircuitGraph& g) {
    const int n = static_cast<int>(g.nodes.size());
    // Renumber fragments by smallest contained node id.
    std::map<int, int> renumber;
    for (int v = 0; v < n; ++v)
        if (!renumber.count(frag_of_raw[v]))
            renumber[frag_of_raw[v]] = static_cast<int>(renumber.size());

    Partition p;
    p.frag_of.resize(n);
    p.fragments.resize(renumber.size());
    for (auto& [old_id, new_id] : renumber) p.fragments[new_id].id = new_id;
    for (int v = 0; v < n; ++v) {
        int f = renumber[frag_of_raw[v]];
        p.frag_of[v] = f;
        p.fragments[f].node_ids.push_back(v);
    }
    for (Fragment& f : p.fragments) {
        auto wd = width_depth(f.node_ids, g, [&](int u) { return p.frag_of[u] == f.id; });
        f.width = wd.width;
        f.depth = wd.depth;
    }
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const GraphEdge& edge = g.edges[e];
        int a = p.frag_of[edge.src], b = p.frag_of[edge.dst];
        if (a == b) continue;
        p.cuts.push_back(Cut{static_cast<int>(e), edge.kind, {std::min(a, b), std::max(a, b)},
                             edge.weight});
    }
    return p;
}

uint64_t wl_hash(const std::vector<int>& sub_nodes, const CircuitGraph& g, int iterations) {
    std::unordered_map<int, uint64_t> color;
    color.reserve(sub_nodes.size() * 2);
    for (int v : sub_nodes) color[v] = label_color(g, v);

    for (int it = 0; it < iterations; ++it) {
        std::unordered_map<int, uint64_t> next;
        next.reserve(color.size() * 2);
        std::vector<std::pair<uint64_t, uint64_t>> neigh;
        for (int v : sub_nodes) {
            neigh.clear();
            for (auto [eidx, u] : g.adj[v]) {
                auto cu = color.find(u);
                if (cu == color.end()) continue;
                const GraphEdge& e = g.edges[eidx];
                uint64_t tag = e.kind == EdgeKind::Gate ? 2 : (e.src == v ? 0 : 1);
                neigh.emplace_back(tag, cu->second);
            }
            std::sort(neigh.begin(), neigh.end());
            uint64_t h = fnv_u64(kFnvOffset, color[v]);
            for (auto& [tag, c] : neigh) {
                h = fnv_u64(h, tag);
                h = fnv_u64(h, c);
            }
            next[v] = h;
        }
        color = std::move(next);
    }

    std::vector<uint64_t> colors;
    colors.reserve(sub_nodes.size());
    for (int v : sub_nodes) colors.push_back(color[v]);
    std::sort(colors.begin(), colors.end());
    uint64_t h = kFnvOffset;
    for (uint64_t c : colors) h = fnv_u64(h, c);
    return h;
}

namespace {

// Frontier key: edge tag (wire out / wire in / gate) plus neighbor label.
using GrowKey = std::pair<uint64_t, uint64_t>;

struct Instance {
    std::vector<int> nodes;  // sorted
    std::set<int> members;
    int width = 0;

    bool contains(int v) const { return members.count(v) > 0; }
    int width_delta(int v, const CircuitGraph& g) const {
        int p = g.wire_pred(v);
        int s = g.wire_succ(v);
        return (p < 0 || !contains(p) ? 1 : 0) - (s >= 0 && contains(s) ? 1 : 0);
    }
    void add(int v, const CircuitGraph& g) {
        width += width_delta(v, g);
        members.insert(v);
        nodes.insert(std::lower_bound(nodes.begin(), nodes.end(), v), v);
    }
    void remove(int v, const CircuitGraph& g) {
        members.erase(v);
        nodes.erase(std::lower_bound(nodes.begin(), nodes.end(), v));
        width -= width_delta(v, g);
    }
};

// Grow one instance alone: greedy connected chunk up to the width limit.
void grow_single(Instance& inst, const CircuitGraph& g, int q_con, std::vector<bool>& visited,
                 const std::vector<uint64_t>& label_colors) {
    using Entry = std::tuple<uint64_t, uint64_t, int>;  // (tag, label, node)
    std::set<Entry> frontier;
    auto push_neighbors = [&](int v) {
        for (auto [eidx, u] : g.adj[v]) {
            if (visited[u]) continue;
            const GraphEdge& e = g.edges[eidx];
            uint64_t tag = e.kind == EdgeKind::Gate ? 2 : (e.src == v ? 0 : 1);
            frontier.insert({tag, label_colors[u], u});
        }
    };
    for (int v : inst.nodes) push_neighbors(v);
    while (!frontier.empty()) {
        auto it = frontier.begin();
        int u = std::get<2>(*it);
        frontier.erase(it);
        if (visited[u]) continue;
        if (inst.width + inst.width_delta(u, g) > q_con) continue;
        inst.add(u, g);
        visited[u] = true;
        push_neighbors(u);
    }
}

}  // namespace

std::vector<InitialModule> module_finding(const CircuitGraph& g, const MetaGraph& mg, int q_con,
                                          int wl_iterations) {
    if (q_con < 2) throw Error("module_finding: qubit constraint must be >= 2");
    const int n = static_cast<int>(g.nodes.size());
    std::vector<uint64_t> label_colors(n);
    for (int v = 0; v < n; ++v) label_colors[v] = label_color(g, v);

    std::vector<const MetaNode*> order;
    for (const MetaNode& m : mg.meta_nodes) order.push_back(&m);
    std::sort(order.begin(), order.end(), [](const MetaNode* a, const MetaNode* b) {
        if (a->fold_weight != b->fold_weight) return a->fold_weight > b->fold_weight;
        return a->representative < b->representative;
    });

    std::vector<bool> visited(n, false);
    std::vector<InitialModule> out;

    for (const MetaNode* m : order) {
        std::vector<int> seeds;
        for (int v : m->folded_nodes)
            if (!visited[v]) seeds.push_back(v);
        if (seeds.empty()) continue;

        std::vector<Instance> inst(seeds.size());
        for (size_t i = 0; i < seeds.size(); ++i) {
            inst[i].add(seeds[i], g);
            visited[seeds[i]] = true;
        }

        if (inst.size() == 1) {
            grow_single(inst[0], g, q_con, visited, label_colors);
        } else {
            // Lockstep growth: all instances extend with the same frontier key
            // and must stay mutually WL-equal.
            while (true) {
                // Candidate keys per instance, with the smallest eligible node each.
                std::vector<std::map<GrowKey, std::vector<int>>> cands(inst.size());
                for (size_t i = 0; i < inst.size(); ++i) {
                    for (int v : inst[i].nodes) {
                        for (auto [eidx, u] : g.adj[v]) {
                            if (visited[u]) continue;
                            const GraphEdge& e = g.edges[eidx];
                            uint64_t tag = e.kind == EdgeKind::Gate ? 2 : (e.src == v ? 0 : 1);
                            cands[i][{tag, label_colors[u]}].push_back(u);
                        }
                    }
                    for (auto& [key, nodes] : cands[i]) {
                        std::sort(nodes.begin(), nodes.end());
                        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
                    }
                }
                std::vector<GrowKey> keys;
                for (auto& [key, nodes] : cands[0]) {
                    bool everywhere = true;
                    for (size_t i = 1; i < inst.size() && everywhere; ++i)
                        everywhere = cands[i].count(key) > 0;
                    if (everywhere) keys.push_back(key);
                }

                bool extended = false;
                for (const GrowKey& key : keys) {
                    std::vector<int> picks;
                    std::set<int> picked;
                    bool ok = true;
                    for (size_t i = 0; i < inst.size() && ok; ++i) {
                        ok = false;
                        for (int u : cands[i][key]) {
                            if (picked.count(u)) continue;
                            if (inst[i].width + inst[i].width_delta(u, g) > q_con) continue;
                            picks.push_back(u);
                            picked.insert(u);
                            ok = true;
                            break;
                        }
                    }
                    if (!ok) continue;
                    for (size_t i = 0; i < inst.size(); ++i) inst[i].add(picks[i], g);
                    uint64_t h0 = wl_hash(inst[0].nodes, g, wl_iterations);
                    bool equal = true;
                    for (size_t i = 1; i < inst.size() && equal; ++i)
                        equal = wl_hash(inst[i].nodes, g, wl_iterations) == h0;
                    if (equal) {
                        for (int u : picks) visited[u] = true;
                        extended = true;
                        break;
                    }
                    for (size_t i = 0; i < inst.size(); ++i) inst[i].remove(picks[i], g);
                }
                if (!extended) break;
            }
        }

        for (Instance& i : inst)
            out.push_back(InitialModule{std::move(i.nodes), 0});
    }
    for (InitialModule& m : out) m.hash = wl_hash(m.nodes, g, wl_iterations);
    return out;
}

Partition greedy_merge(const std::vector<InitialModule>& initial, const CircuitGraph& g,
                       int q_con) {
    const int n = static_cast<int>(g.nodes.size());
    const int k = static_cast<int>(initial.size());
    std::vector<int> super_of(n, -1);
    for (int i = 0; i < k; ++i)
        for (int v : initial[i].nodes) super_of[v] = i;

    std::vector<std::vector<int>> nodes(k);
    std::vector<bool> alive(k, true);
    std::vector<int> version(k, 0);
    for (int i = 0; i < k; ++i) nodes[i] = initial[i].nodes;

    // Crossing-edge log-gamma weight between adjacent supernodes.
    std::vector<std::map<int, double>> weight(k);
    for (const GraphEdge& e : g.edges) {
        int a = super_of[e.src], b = super_of[e.dst];
        if (a == b) continue;
        double lw = std::log10(e.weight);
        weight[a][b] += lw;
        weight[b][a] += lw;
    }

    struct Cand {
        double w;
        int a, b, va, vb;
    };
    auto cmp = [](const Cand& x, const Cand& y) {
        if (x.w != y.w) return x.w < y.w;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    };
    std::priority_queue<Cand, std::vector<Cand>, decltype(cmp)> heap(cmp);
    for (int a = 0; a < k; ++a)
        for (auto& [b, w] : weight[a])
            if (a < b) heap.push(Cand{w, a, b, 0, 0});

    std::vector<bool> in_union(n, false);
    while (!heap.empty()) {
        Cand c = heap.top();
        heap.pop();
        if (!alive[c.a] || !alive[c.b] || version[c.a] != c.va || version[c.b] != c.vb) continue;

        // Merged width; infeasible candidates are simply dropped (they are
        // re-enqueued if either side changes).
        std::vector<int> merged;
        merged.reserve(nodes[c.a].size() + nodes[c.b].size());
        std::merge(nodes[c.a].begin(), nodes[c.a].end(), nodes[c.b].begin(), nodes[c.b].end(),
                   std::back_inserter(merged));
        for (int v : merged) in_union[v] = true;
        int w = node_set_width(in_union, merged, g);
        for (int v : merged) in_union[v] = false;
        if (w > q_con) continue;

        int s = c.a, t = c.b;  // survivor keeps the smaller index
        nodes[s] = std::move(merged);
        alive[t] = false;
        version[s]++;
        for (auto& [nb, lw] : weight[t]) {
            if (nb == s) continue;
            weight[nb].erase(t);
            if (!alive[nb]) continue;
            weight[s][nb] += lw;
            weight[nb][s] = weight[s][nb];
        }
        weight[s].erase(t);
        weight[t].clear();
        for (auto& [nb, lw] : weight[s])
            if (alive[nb])
                heap.push(Cand{lw, std::min(s, nb), std::max(s, nb), version[std::min(s, nb)],
                               version[std::max(s, nb)]});
        for (int v : nodes[s]) super_of[v] = s;
    }

    return finalize_partition(super_of, g);
}

namespace {

// QRO term of one fragment: gamma product (theoretical grouping), width,
// depth, as log10. Localized so refinement can re-evaluate only the
// fragments a move touches.
double fragment_term_log10(int frag, const std::vector<int>& nodes_sorted,
                           const std::vector<int>& frag_of, const CircuitGraph& g,
                           const GammaTable& t) {
    if (nodes_sorted.empty()) return -std::numeric_limits<double>::infinity();
    auto in_frag = [&](int u) { return frag_of[u] == frag; };
    auto wd = width_depth(nodes_sorted, g, in_frag);

    double lg = 0.0;
    // Gate cuts and per-pair wire cut lists.
    std::map<int, std::vector<int>> wire_cuts;  // other fragment -> upstream node ids
    for (int v : nodes_sorted) {
        for (auto [eidx, u] : g.adj[v]) {
            if (frag_of[u] == frag) continue;
            const GraphEdge& e = g.edges[eidx];
            if (e.kind == EdgeKind::Gate) {
                lg += std::log10(t.gate_gamma(g.nodes[v].gate_name));
            } else {
                wire_cuts[frag_of[u]].push_back(e.src);
            }
        }
    }
    for (auto& [other, ups] : wire_cuts) {
        std::sort(ups.begin(), ups.end());
        // Group consecutive wire cuts with nothing but the pair's own nodes
        // in between on the affected wires.
        size_t start = 0;
        auto flush = [&](size_t end) {
            int len = static_cast<int>(end - start);
            lg += len >= 2 ? std::log10(t.parallel_wire(len))
                           : len * std::log10(t.variation_sqrt ? std::sqrt(t.wire_single)
                                                               : t.wire_single);
            start = end;
        };
        for (size_t i = 1; i < ups.size(); ++i) {
            int prev_up = ups[i - 1], next_up = ups[i];
            int prev_down = g.wire_succ(prev_up), next_down = g.wire_succ(next_up);
            bool clean = true;
            for (int q : {g.nodes[prev_up].qubit, g.nodes[next_up].qubit}) {
                for (int v : g.wire_seq[q]) {
                    if (v <= prev_up || v >= next_down) continue;
                    if (v == prev_down || v == next_up) continue;
                    clean = false;
                    break;
                }
                if (!clean) break;
            }
            if (!clean) flush(i);
        }
        flush(ups.size());
    }
    return lg + std::log10(static_cast<double>(wd.width) * static_cast<double>(wd.depth));
}

double log10_sum(const std::vector<double>& log_terms) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double t : log_terms) peak = std::max(peak, t);
    if (std::isinf(peak)) return peak;
    double acc = 0.0;
    for (double t : log_terms) acc += std::pow(10.0, t - peak);
    return peak + std::log10(acc);
}

}  // namespace

Partition refine(const Partition& p, const CircuitGraph& g, int q_con, const GammaTable& table,
                 int max_passes) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> frag_of = p.frag_of;

    // Structural budget: with tens of thousands of crossing edges (dense
    // all-to-all circuits) every node is a boundary node and local search
    // buys little at great cost; keep the merged partition as-is.
    size_t crossing = 0;
    for (const GraphEdge& e : g.edges)
        if (frag_of[e.src] != frag_of[e.dst]) ++crossing;
    if (crossing > 1000) return finalize_partition(frag_of, g);

    std::map<int, std::set<int>> members;
    for (int v = 0; v < n; ++v) members[frag_of[v]].insert(v);

    auto sorted_nodes = [&](int f) {
        return std::vector<int>(members[f].begin(), members[f].end());
    };
    auto width_of = [&](int f) {
        if (members[f].empty()) return 0;
        auto nodes = sorted_nodes(f);
        return width_depth(nodes, g, [&](int u) { return frag_of[u] == f; }).width;
    };
    auto term_of = [&](int f) {
        if (members[f].empty()) return -std::numeric_limits<double>::infinity();
        auto nodes = sorted_nodes(f);
        return fragment_term_log10(f, nodes, frag_of, g, table);
    };
    auto affected_frags = [&](int v) {
        std::set<int> out{frag_of[v]};
        for (auto [eidx, u] : g.adj[v]) out.insert(frag_of[u]);
        return out;
    };
    auto apply_move = [&](int v, int to) {
        members[frag_of[v]].erase(v);
        members[to].insert(v);
        frag_of[v] = to;
    };

    // Per-fragment term cache for the current assignment, plus the global
    // peak so deltas can be compared after scaling by 10^-peak without
    // overflowing on cut-heavy fragments.
    std::map<int, double> term_cache;
    double peak = -std::numeric_limits<double>::infinity();
    auto refresh_peak = [&] {
        peak = -std::numeric_limits<double>::infinity();
        for (const auto& [f, t] : term_cache)
            if (!members[f].empty()) peak = std::max(peak, t);
    };
    for (const auto& [f, ms] : members) term_cache[f] = term_of(f);
    refresh_peak();

    struct Candidate {
        double delta = 0.0;
        int v = -1, target = -1;  // move (or merge source fragment when v < -1)
        int u = -1;               // >= 0: 1-1 swap partner
        int merge_from = -1;      // >= 0: whole-fragment merge into target
    };

    // Delta of one trial reassignment over its affected set, in units of
    // 10^peak of the current assignment.
    auto trial_delta = [&](const std::set<int>& frags) {
        double before = 0.0, after = 0.0;
        for (int f : frags) {
            double t = term_cache.count(f) ? term_cache[f]
                                           : -std::numeric_limits<double>::infinity();
            if (!std::isinf(t)) before += std::pow(10.0, t - peak);
            double ta = term_of(f);
            if (!std::isinf(ta)) after += std::pow(10.0, ta - peak);
        }
        return after - before;
    };

    // Steepest descent: scan every boundary move and adjacent 1-1 swap, apply
    // the single best strictly-improving change, repeat. The move budget
    // scales with the number of fragments per requested pass.
    int budget = max_passes * std::max(4, static_cast<int>(members.size())) * 4;
    for (int step = 0; step < budget; ++step) {
        Candidate best;
        for (int v = 0; v < n; ++v) {
            int home = frag_of[v];
            std::set<int> neighbor_frags;
            for (auto [eidx, u] : g.adj[v])
                if (frag_of[u] != home) neighbor_frags.insert(frag_of[u]);
            if (neighbor_frags.empty()) continue;

            for (int target : neighbor_frags) {
                std::set<int> frags = affected_frags(v);
                frags.insert(target);
                apply_move(v, target);
                bool feasible = width_of(target) <= q_con && width_of(home) <= q_con;
                double delta = feasible ? trial_delta(frags) : 0.0;
                apply_move(v, home);
                if (feasible && delta < best.delta - 1e-9)
                    best = Candidate{delta, v, target, -1};
            }

            for (auto [eidx, u] : g.adj[v]) {
                int other = frag_of[u];
                if (other == home || u < v) continue;
                std::set<int> frags = affected_frags(v);
                std::set<int> fu = affected_frags(u);
                frags.insert(fu.begin(), fu.end());
                apply_move(v, other);
                apply_move(u, home);
                bool feasible = width_of(other) <= q_con && width_of(home) <= q_con;
                double delta = feasible ? trial_delta(frags) : 0.0;
                apply_move(u, other);
                apply_move(v, home);
                if (feasible && delta < best.delta - 1e-9)
                    best = Candidate{delta, v, other, u};
            }
        }

        // Whole-fragment merges across any crossing edge. Node-by-node paths
        // to the same state often pass through worse intermediates, so this
        // is a move of its own.
        std::set<std::pair<int, int>> adjacent_pairs;
        for (const GraphEdge& e : g.edges) {
            int a = frag_of[e.src], b = frag_of[e.dst];
            if (a != b) adjacent_pairs.emplace(std::min(a, b), std::max(a, b));
        }
        auto apply_merge = [&](int from, int into) {
            std::vector<int> moving(members[from].begin(), members[from].end());
            for (int v : moving) apply_move(v, into);
        };
        for (auto [a, b] : adjacent_pairs) {
            std::set<int> frags{a, b};
            for (int v : members[a])
                for (auto [eidx, u] : g.adj[v]) frags.insert(frag_of[u]);
            for (int v : members[b])
                for (auto [eidx, u] : g.adj[v]) frags.insert(frag_of[u]);
            std::vector<int> moved(members[b].begin(), members[b].end());
            apply_merge(b, a);
            bool feasible = width_of(a) <= q_con;
            double delta = feasible ? trial_delta(frags) : 0.0;
            for (int v : moved) apply_move(v, b);
            if (feasible && delta < best.delta - 1e-9)
                best = Candidate{delta, -2, a, -1, b};
        }

        if (best.v == -1) break;

        std::set<int> touched;
        if (best.merge_from >= 0) {
            for (int v : members[best.merge_from]) {
                auto fs = affected_frags(v);
                touched.insert(fs.begin(), fs.end());
            }
            apply_merge(best.merge_from, best.target);
            touched.insert(best.target);
        } else {
            int home = frag_of[best.v];
            apply_move(best.v, best.target);
            if (best.u >= 0) apply_move(best.u, home);
            touched = affected_frags(best.v);
            touched.insert(home);
            if (best.u >= 0) {
                auto fu = affected_frags(best.u);
                touched.insert(fu.begin(), fu.end());
            }
        }
        // Terms of every fragment adjacent to the moved nodes changed too.
        for (int f : touched) term_cache[f] = term_of(f);
        refresh_peak();
    }
    return finalize_partition(frag_of, g);
}

Partition partition_circuit(const CircuitGraph& g, int q_con, const PartitionConfig& cfg) {
    return run_pipeline(g, q_con, cfg).partition;
}

PipelineResult run_pipeline(const CircuitGraph& g, int q_con, const PartitionConfig& cfg) {
    if (q_con < 2) throw Error("partition_circuit: qubit constraint must be >= 2");
    if (g.nodes.empty()) throw Error("partition_circuit: empty circuit");

    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    PipelineResult res;
    res.original_nodes = static_cast<int>(g.nodes.size());
    res.folded_nodes = res.original_nodes;

    std::vector<int> all(g.nodes.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<bool> everything(g.nodes.size(), true);
    if (node_set_width(everything, all, g) <= q_con) {
        // Fits as-is; nothing to cut.
        res.partition = finalize_partition(std::vector<int>(g.nodes.size(), 0), g);
        return res;
    }

    auto t0 = clock::now();
    auto qubit_graphs = extract_qubit_graphs(g);
    MetaGraph mg = fold(qubit_graphs, g, cfg.min_fold_len, cfg.threads);
    res.folded_nodes = static_cast<int>(mg.meta_nodes.size());
    res.fold_ms = ms_since(t0);

    t0 = clock::now();
    auto initial = module_finding(g, mg, q_con, cfg.wl_iterations);
    res.module_ms = ms_since(t0);

    t0 = clock::now();
    Partition merged = greedy_merge(initial, g, q_con);
    res.merge_ms = ms_since(t0);

    t0 = clock::now();
    GammaTable table;
    table.variation_sqrt = cfg.variation_sqrt;
    res.partition = refine(merged, g, q_con, table, cfg.refine_passes);
    res.refine_ms = ms_since(t0);
    return res;
}

Partition partition_circuit(const Circuit& c, int q_con, const PartitionConfig& cfg) {
    CircuitGraph g = build_circuit_graph(c);
    return partition_circuit(g, q_con, cfg);
}

Partition naive_baseline(const CircuitGraph& g, int q_con) {
    if (q_con < 2) throw Error("naive_baseline: qubit constraint must be >= 2");
    if (g.nodes.empty()) throw Error("naive_baseline: empty circuit");
    std::vector<int> frag_of(g.nodes.size());
    for (size_t v = 0; v < g.nodes.size(); ++v) frag_of[v] = g.nodes[v].qubit / q_con;
    return finalize_partition(frag_of, g);
}

void check_partition(const Partition& p, const CircuitGraph& g, int q_con) {
    const int n = static_cast<int>(g.nodes.size());
    if (static_cast<int>(p.frag_of.size()) != n) throw Error("partition: assignment size mismatch");
    std::vector<int> seen(n, 0);
    for (const Fragment& f : p.fragments) {
        if (f.node_ids.empty()) throw Error("partition: empty fragment");
        if (f.width > q_con) throw Error("partition: fragment width exceeds qubit constraint");
        for (int v : f.node_ids) {
            if (p.frag_of[v] != f.id) throw Error("partition: inconsistent assignment");
            seen[v]++;
        }
    }
    for (int v = 0; v < n; ++v)
        if (seen[v] != 1) throw Error("partition: node not covered exactly once");
    size_t crossing = 0;
    for (const GraphEdge& e : g.edges)
        if (p.frag_of[e.src] != p.frag_of[e.dst]) ++crossing;
    if (crossing != p.cuts.size()) throw Error("partition: cut set differs from crossing edges");
    for (const Cut& c : p.cuts) {
        const GraphEdge& e = g.edges[c.edge_index];
        if (p.frag_of[e.src] == p.frag_of[e.dst]) throw Error("partition: cut inside a fragment");
    }
}

}  // namespace cifold
