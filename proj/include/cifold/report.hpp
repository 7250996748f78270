#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cifold/cost.hpp"
#include "cifold/partition.hpp"

namespace cifold {

inline constexpr const char* kToolVersion = "1.0.0";

struct StageTimings {
    double parse_ms = 0.0;
    double fold_ms = 0.0;
    double module_ms = 0.0;
    double merge_ms = 0.0;
    double refine_ms = 0.0;
    double total_ms = 0.0;
};

/// Everything cmd_cut knows about one pipeline run. Serializes to structured
/// text that is byte-identical across reruns except for the timing lines.
struct RunReport {
    std::string input;  // source path or "<kind>-<size>"
    int num_qubits = 0;
    int num_gates = 0;
    int qubit_limit = 0;
    std::string gamma_mode = "fixed";  // "fixed" | "sqrt"
    int min_fold_len = 3;
    int threads = 1;
    uint64_t seed = 0;

    int original_nodes = 0;
    int folded_nodes = 0;

    Partition partition;
    CostReport cost;
    std::optional<CostReport> baseline;

    StageTimings timings;
};

/// Key-value header plus fragment and cut tables. Timing lines are emitted
/// only when include_timings is set, so reports can be compared modulo time.
std::string format_report(const RunReport& r, const CircuitGraph& g, bool include_timings = true);

}  // namespace cifold
