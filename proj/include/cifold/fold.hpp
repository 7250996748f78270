#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cifold/graph.hpp"

namespace cifold {

/// Pattern-matching identity of a graph node. Two nodes with equal labels are
/// interchangeable when folding. Partner qubit identity is deliberately
/// excluded so the same pattern on different qubit pairs can fold.
struct NodeLabel {
    std::string gate_name;
    std::vector<long long> qparams;  // angles quantized at kAngleTolerance
    NodeRole role;
    std::string partner_kind;  // partner gate name, empty for 1q gates

    auto operator<=>(const NodeLabel&) const = default;
};

NodeLabel node_label(const CircuitGraph& g, int node_id);

/// Contiguous match between two sequences: s1[start1, start1+len) equals
/// s2[start2, start2+len) element-wise.
struct LccsMatch {
    int start1;
    int start2;
    int len;
};

/// Longest consecutive common subsequence. Full DP over both sequences;
/// returns the globally longest run of length >= min_len, ties broken by
/// smallest end index in s1, then in s2.
std::optional<LccsMatch> lccs(const std::vector<NodeLabel>& s1, const std::vector<NodeLabel>& s2,
                              int min_len);
std::optional<LccsMatch> lccs_ids(const std::vector<int>& s1, const std::vector<int>& s2,
                                  int min_len);

/// A group of qubits being folded together. seq concatenates the member
/// qubits' wire sequences in qubit order; id is the smallest member qubit.
struct FoldGroup {
    int id;
    std::vector<int> qubits;
    std::vector<int> seq;
};

/// Greedy maximum-weight matching over groups, weight = number of two-qubit
/// gates spanning the pair. Zero-weight pairs are still matched so folding
/// terminates; ties broken by smaller group id. Returns disjoint index pairs;
/// an odd leftover group stays unmatched for the next layer.
std::vector<std::pair<int, int>> most_entangled_pairs(const std::vector<FoldGroup>& groups,
                                                      const CircuitGraph& g);

struct MetaNode {
    int representative;             // node id that stands for the class
    std::vector<int> folded_nodes;  // all original node ids, sorted
    int fold_weight;                // |folded_nodes|
};

/// Folded pattern graph. Meta edges carry representative endpoints; the
/// provenance maps are total over the circuit graph's nodes.
struct MetaGraph {
    std::vector<MetaNode> meta_nodes;  // sorted by representative id
    std::vector<GraphEdge> meta_edges;
    std::vector<int> rep_of;      // node id -> representative node id
    std::vector<int> meta_index;  // node id -> index into meta_nodes
};

/// Layered pairwise folding: each layer matches groups by MEP, runs LCCS per
/// pair and folds the matched run, then composes the pair. A final pass folds
/// repeated runs inside each single qubit sequence. Result is independent of
/// the worker count.
MetaGraph fold(const std::vector<QubitGraph>& graphs, const CircuitGraph& g, int min_len = 3,
               int threads = 1);

std::string export_dot(const MetaGraph& mg, const CircuitGraph& g);

}  // namespace cifold
