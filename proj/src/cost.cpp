#include "cifold/cost.hpp"

#include <algorithm>
#include <limits>

namespace cifold {

double GammaTable::gate_gamma(const std::string& name) const {
    auto it = gate.find(name);
    if (it == gate.end()) throw Error("no gamma entry for gate-cut of: " + name);
    return variation_sqrt ? std::sqrt(it->second) : it->second;
}

double GammaTable::parallel_wire(int n) const {
    if (n <= 1) return variation_sqrt ? std::sqrt(wire_single) : wire_single;
    double v = std::pow(std::pow(2.0, n + 1) + 1.0, 2.0);
    return variation_sqrt ? std::sqrt(v) : v;
}

double gamma_lookup(EdgeKind kind, const std::string& gate_name, const GammaTable& t) {
    if (kind == EdgeKind::Wire) return t.variation_sqrt ? std::sqrt(t.wire_single) : t.wire_single;
    return t.gate_gamma(gate_name);
}

double sampling_overhead(double gamma, int n_cuts) {
    if (n_cuts < 0) throw Error("sampling_overhead: negative cut count");
    return std::pow(gamma, n_cuts);
}

std::vector<CutGroup> group_parallel_cuts(const Partition& p, const CircuitGraph& g) {
    std::vector<CutGroup> groups;

    // Gate cuts are always their own single group.
    for (size_t i = 0; i < p.cuts.size(); ++i)
        if (p.cuts[i].kind == EdgeKind::Gate)
            groups.push_back(CutGroup{p.cuts[i].fragments.first, p.cuts[i].fragments.second,
                                      CutGroupKind::Single, {static_cast<int>(i)}});

    // Wire cuts bucketed per fragment pair, ordered by cut position.
    std::map<std::pair<int, int>, std::vector<int>> wire_by_pair;
    for (size_t i = 0; i < p.cuts.size(); ++i)
        if (p.cuts[i].kind == EdgeKind::Wire)
            wire_by_pair[p.cuts[i].fragments].push_back(static_cast<int>(i));

    for (auto& [pair, cuts] : wire_by_pair) {
        std::sort(cuts.begin(), cuts.end(), [&](int a, int b) {
            return g.edges[p.cuts[a].edge_index].src < g.edges[p.cuts[b].edge_index].src;
        });
        CutGroup cur{pair.first, pair.second, CutGroupKind::Single, {cuts[0]}};
        for (size_t k = 1; k < cuts.size(); ++k) {
            const GraphEdge& prev = g.edges[p.cuts[cuts[k - 1]].edge_index];
            const GraphEdge& next = g.edges[p.cuts[cuts[k]].edge_index];
            // Fragments of the operations lying between the two cut positions
            // on either affected wire.
            bool clean = true, third_party = false;
            for (int q : {g.nodes[prev.src].qubit, g.nodes[next.src].qubit}) {
                for (int v : g.wire_seq[q]) {
                    if (v <= prev.src || v >= next.dst) continue;
                    if (v == prev.dst || v == next.src) continue;  // the cut endpoints themselves
                    int f = p.frag_of[v];
                    if (f != pair.first && f != pair.second) third_party = true;
                    clean = false;
                }
            }
            if (clean) {
                cur.cut_indices.push_back(cuts[k]);
            } else {
                if (cur.cut_indices.size() > 1) cur.kind = CutGroupKind::Parallel;
                groups.push_back(cur);
                cur = CutGroup{pair.first, pair.second,
                               third_party ? CutGroupKind::Blackbox : CutGroupKind::Single,
                               {cuts[k]}};
            }
        }
        if (cur.cut_indices.size() > 1 && cur.kind != CutGroupKind::Blackbox)
            cur.kind = CutGroupKind::Parallel;
        groups.push_back(cur);
    }
    return groups;
}

CostReport qro(const Partition& p, const CircuitGraph& g, const GammaTable& t) {
    CostReport report;
    const int nf = static_cast<int>(p.fragments.size());
    std::vector<double> lg_theo(nf, 0.0), lg_prac(nf, 0.0);

    for (const Cut& c : p.cuts) {
        double w = (c.kind == EdgeKind::Wire)
                       ? gamma_lookup(EdgeKind::Wire, "", t)
                       : t.gate_gamma(g.nodes[g.edges[c.edge_index].src].gate_name);
        double lw = std::log10(w);
        lg_prac[c.fragments.first] += lw;
        lg_prac[c.fragments.second] += lw;
        report.sampling_overhead_log10 += lw;
        if (c.kind == EdgeKind::Wire)
            report.wire_cut_count++;
        else
            report.gate_cut_count++;
    }

    // Theoretical mode: each parallel group of n wire cuts contributes the
    // grouped weight once per endpoint fragment; everything else is per cut.
    for (const CutGroup& grp : group_parallel_cuts(p, g)) {
        double lw;
        if (grp.kind == CutGroupKind::Parallel) {
            lw = std::log10(t.parallel_wire(static_cast<int>(grp.cut_indices.size())));
            report.parallel_group_count++;
        } else {
            if (grp.kind == CutGroupKind::Blackbox) report.blackbox_group_count++;
            lw = 0.0;
            for (int ci : grp.cut_indices) {
                const Cut& c = p.cuts[ci];
                double w = (c.kind == EdgeKind::Wire)
                               ? gamma_lookup(EdgeKind::Wire, "", t)
                               : t.gate_gamma(g.nodes[g.edges[c.edge_index].src].gate_name);
                lw += std::log10(w);
            }
        }
        lg_theo[grp.frag_a] += lw;
        lg_theo[grp.frag_b] += lw;
    }

    auto total = [&](const std::vector<double>& lg) {
        double peak = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < nf; ++i) {
            double term = lg[i] + std::log10(static_cast<double>(p.fragments[i].width) *
                                             static_cast<double>(p.fragments[i].depth));
            peak = std::max(peak, term);
        }
        double acc = 0.0;
        for (int i = 0; i < nf; ++i) {
            double term = lg[i] + std::log10(static_cast<double>(p.fragments[i].width) *
                                             static_cast<double>(p.fragments[i].depth));
            acc += std::pow(10.0, term - peak);
        }
        return peak + std::log10(acc);
    };

    report.qro_log10_theoretical = total(lg_theo);
    report.qro_log10_practical = total(lg_prac);
    auto linear = [](double lg) {
        return lg > 307.0 ? std::numeric_limits<double>::infinity() : std::pow(10.0, lg);
    };
    report.qro_theoretical = linear(report.qro_log10_theoretical);
    report.qro_practical = linear(report.qro_log10_practical);

    for (int i = 0; i < nf; ++i)
        report.fragments.push_back(FragmentCost{p.fragments[i].id, p.fragments[i].width,
                                                p.fragments[i].depth, lg_theo[i], lg_prac[i]});
    return report;
}

}  // namespace cifold
