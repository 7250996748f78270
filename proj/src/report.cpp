#include "cifold/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace cifold {

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// "0-3,7,9-12" style compression of a sorted qubit set.
std::string qubit_ranges(const std::set<int>& qs) {
    std::ostringstream out;
    auto it = qs.begin();
    while (it != qs.end()) {
        int lo = *it, hi = lo;
        while (std::next(it) != qs.end() && *std::next(it) == hi + 1) hi = *++it;
        if (out.tellp() > 0) out << ",";
        if (lo == hi)
            out << lo;
        else
            out << lo << "-" << hi;
        ++it;
    }
    return out.str();
}

}  // namespace

std::string format_report(const RunReport& r, const CircuitGraph& g, bool include_timings) {
    std::ostringstream out;
    out << "cifold report v" << kToolVersion << "\n";
    out << "input: " << r.input << "\n";
    out << "qubits: " << r.num_qubits << "\n";
    out << "gates: " << r.num_gates << "\n";
    out << "qubit_limit: " << r.qubit_limit << "\n";
    out << "gamma_mode: " << r.gamma_mode << "\n";
    out << "min_fold_len: " << r.min_fold_len << "\n";
    out << "threads: " << r.threads << "\n";
    out << "seed: " << r.seed << "\n";
    out << "nodes_original: " << r.original_nodes << "\n";
    out << "nodes_folded: " << r.folded_nodes << "\n";
    if (r.original_nodes > 0)
        out << "fold_compression: "
            << num(static_cast<double>(r.folded_nodes) / static_cast<double>(r.original_nodes))
            << "\n";
    out << "fragments: " << r.partition.fragments.size() << "\n";
    out << "cuts: " << r.partition.cuts.size() << "\n";
    out << "wire_cuts: " << r.cost.wire_cut_count << "\n";
    out << "gate_cuts: " << r.cost.gate_cut_count << "\n";
    out << "parallel_groups: " << r.cost.parallel_group_count << "\n";
    out << "blackbox_groups: " << r.cost.blackbox_group_count << "\n";
    out << "qro_theoretical_log10: " << num(r.cost.qro_log10_theoretical) << "\n";
    out << "qro_practical_log10: " << num(r.cost.qro_log10_practical) << "\n";
    out << "qro_theoretical: " << num(r.cost.qro_theoretical) << "\n";
    out << "qro_practical: " << num(r.cost.qro_practical) << "\n";
    ErrorBudget budget;
    out << "sampling_overhead_log10: " << num(r.cost.sampling_overhead_log10) << "\n";
    out << "shots_eps_" << num(budget.epsilon) << ": " << num(budget.shots(r.cost.sampling_overhead_log10))
        << "\n";
    if (r.baseline) {
        out << "baseline_qro_theoretical_log10: " << num(r.baseline->qro_log10_theoretical) << "\n";
        out << "baseline_qro_practical_log10: " << num(r.baseline->qro_log10_practical) << "\n";
        out << "baseline_ratio_theoretical_log10: "
            << num(r.baseline->qro_log10_theoretical - r.cost.qro_log10_theoretical) << "\n";
        out << "baseline_ratio_practical_log10: "
            << num(r.baseline->qro_log10_practical - r.cost.qro_log10_practical) << "\n";
    }

    out << "\n[fragments]\n";
    out << "id width depth qubits\n";
    for (const Fragment& f : r.partition.fragments) {
        std::set<int> qs;
        for (int v : f.node_ids) qs.insert(g.nodes[v].qubit);
        out << f.id << " " << f.width << " " << f.depth << " " << qubit_ranges(qs) << "\n";
    }

    out << "\n[cuts]\n";
    out << "id kind frag_a frag_b gamma\n";
    for (size_t i = 0; i < r.partition.cuts.size(); ++i) {
        const Cut& c = r.partition.cuts[i];
        out << i << " " << (c.kind == EdgeKind::Wire ? "wire" : "gate") << " "
            << c.fragments.first << " " << c.fragments.second << " " << num(c.gamma) << "\n";
    }

    if (include_timings) {
        out << "\n[timings]\n";
        out << "parse_ms: " << num(r.timings.parse_ms) << "\n";
        out << "fold_ms: " << num(r.timings.fold_ms) << "\n";
        out << "module_ms: " << num(r.timings.module_ms) << "\n";
        out << "merge_ms: " << num(r.timings.merge_ms) << "\n";
        out << "refine_ms: " << num(r.timings.refine_ms) << "\n";
        out << "total_ms: " << num(r.timings.total_ms) << "\n";
    }
    return out.str();
}

}  // namespace cifold
