#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cifold/fold.hpp"
#include "cifold/graph.hpp"

namespace cifold {

struct GammaTable;  // cost.hpp

/// A subcircuit: a set of circuit-graph nodes plus its resource footprint.
/// width counts qubit wire segments owned by the fragment (a wire cut starts
/// a fresh segment); depth is the ASAP layer count including the measure and
/// prepare operations introduced at cut boundaries.
struct Fragment {
    int id;
    std::vector<int> node_ids;  // sorted
    int width = 0;
    int depth = 0;
};

/// A circuit-graph edge crossing two fragments.
struct Cut {
    int edge_index;                 // into CircuitGraph.edges
    EdgeKind kind;
    std::pair<int, int> fragments;  // ordered (min, max)
    double gamma;                   // sampling weight of this cut alone
};

struct Partition {
    std::vector<Fragment> fragments;
    std::vector<Cut> cuts;
    std::vector<int> frag_of;  // node id -> fragment id
};

/// Number of wire segments spanned by a node set (nodes whose wire
/// predecessor is outside the set each open a segment).
int node_set_width(const std::vector<bool>& in_set, const std::vector<int>& nodes,
                   const CircuitGraph& g);

/// Build fragments, widths, depths and the crossing-edge cut set from a
/// node -> fragment assignment. Fragment ids are renumbered by smallest
/// contained node id; empty fragments are dropped.
Partition finalize_partition(const std::vector<int>& frag_of, const CircuitGraph& g);

/// Weisfeiler-Lehman fingerprint of a node-induced subgraph. Initial colors
/// are node labels, edge colors are kind plus wire direction; invariant under
/// qubit relabeling. Deterministic across runs (FNV-based, no std::hash).
uint64_t wl_hash(const std::vector<int>& sub_nodes, const CircuitGraph& g, int iterations = 3);

struct InitialModule {
    std::vector<int> nodes;  // sorted
    uint64_t hash = 0;
};

/// Edge-growth initial partition: repeatedly seed all unvisited instances of
/// the most-folded meta node and grow them in lockstep while they stay
/// mutually WL-equal and within the qubit constraint.
std::vector<InitialModule> module_finding(const CircuitGraph& g, const MetaGraph& mg, int q_con,
                                          int wl_iterations = 3);

/// Coarsen supernodes: repeatedly merge the adjacent pair with the largest
/// crossing-edge gamma product reduction whose merged width fits q_con.
Partition greedy_merge(const std::vector<InitialModule>& initial, const CircuitGraph& g, int q_con);

/// Steepest-descent local search over boundary node moves and adjacent 1-1
/// swaps; never increases QRO, never violates the width constraint. Skipped
/// for partitions with very large crossing-edge counts.
Partition refine(const Partition& p, const CircuitGraph& g, int q_con, const GammaTable& table,
                 int max_passes = 10);

struct PartitionConfig {
    int min_fold_len = 3;
    int threads = 1;
    int wl_iterations = 3;
    int refine_passes = 10;
    bool variation_sqrt = false;
};

/// Full pipeline: graph -> qubit graphs -> fold -> module finding ->
/// greedy merge -> refine. Deterministic for a fixed config.
Partition partition_circuit(const CircuitGraph& g, int q_con, const PartitionConfig& cfg = {});
Partition partition_circuit(const Circuit& c, int q_con, const PartitionConfig& cfg = {});

/// partition_circuit plus per-stage wall-clock times and fold statistics.
struct PipelineResult {
    Partition partition;
    int original_nodes = 0;
    int folded_nodes = 0;
    double fold_ms = 0.0;
    double module_ms = 0.0;
    double merge_ms = 0.0;
    double refine_ms = 0.0;
};
PipelineResult run_pipeline(const CircuitGraph& g, int q_con, const PartitionConfig& cfg = {});

/// Comparison baseline: contiguous qubit blocks of size q_con; every
/// crossing edge becomes a cut.
Partition naive_baseline(const CircuitGraph& g, int q_con);

/// Throws Error if the partition violates coverage, the cut-set identity or
/// the width constraint.
void check_partition(const Partition& p, const CircuitGraph& g, int q_con);

}  // namespace cifold
