#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cifold/partition.hpp"

namespace cifold {

/// Sampling-weight table. Values are the squared gamma quantities that enter
/// the resource overhead directly: 16 per lone wire cut, 9 for the cx family,
/// 49 for swap. variation_sqrt switches every lookup to the square-root
/// "variation count" convention for sensitivity studies.
struct GammaTable {
    double wire_single = 16.0;
    std::map<std::string, double> gate = {{"cx", 9.0}, {"cz", 9.0}, {"cp", 9.0}, {"swap", 49.0}};
    bool variation_sqrt = false;

    double gate_gamma(const std::string& name) const;
    /// Grouped n-wire-cut weight: (2^{n+1}+1)^2 for n >= 2. A group of one is
    /// just a single cut and keeps the single-cut value.
    double parallel_wire(int n) const;
};

double gamma_lookup(EdgeKind kind, const std::string& gate_name, const GammaTable& t = GammaTable());

/// gamma^n
double sampling_overhead(double gamma, int n_cuts);

enum class CutGroupKind { Single, Parallel, Blackbox };

/// Wire cuts between one fragment pair with no third-fragment operation in
/// between on the affected wires. Blackbox groups are classified but costed
/// as independent single cuts.
struct CutGroup {
    int frag_a;
    int frag_b;
    CutGroupKind kind;
    std::vector<int> cut_indices;  // into Partition.cuts
};

std::vector<CutGroup> group_parallel_cuts(const Partition& p, const CircuitGraph& g);

struct FragmentCost {
    int fragment;
    int width;
    int depth;
    double log10_gamma_theoretical;  // parallel groups collapsed
    double log10_gamma_practical;    // fixed per-cut weights
};

struct CostReport {
    std::vector<FragmentCost> fragments;
    double qro_theoretical = 0.0;  // +inf when it exceeds double range
    double qro_practical = 0.0;
    double qro_log10_theoretical = 0.0;
    double qro_log10_practical = 0.0;
    double sampling_overhead_log10 = 0.0;  // log10 of the product of all per-cut weights
    int wire_cut_count = 0;
    int gate_cut_count = 0;
    int parallel_group_count = 0;
    int blackbox_group_count = 0;
};

/// Eq-style overhead: sum over fragments of gamma-product x width x depth,
/// evaluated in log space for numeric range.
CostReport qro(const Partition& p, const CircuitGraph& g, const GammaTable& t = GammaTable());

/// Shot budget for a target additive error epsilon: shots >= (prod gamma) / eps^2.
struct ErrorBudget {
    double epsilon = 0.05;

    double shots_log10(double gamma_product_log10) const {
        return gamma_product_log10 - 2.0 * std::log10(epsilon);
    }
    /// Rounded-up linear shot count; +inf when out of double range.
    double shots(double gamma_product_log10) const {
        double lg = shots_log10(gamma_product_log10);
        if (lg > 307.0) return std::numeric_limits<double>::infinity();
        return std::ceil(std::pow(10.0, lg));
    }
};

}  // namespace cifold
