// cifold: circuit-cutting front end.
//
// Subcommands:
//   gen     write a benchmark circuit as OpenQASM 2.0
//   cut     run the fold/partition pipeline and emit a report
//   verify  reconstruct an observable from the cut circuit and compare
//           against the exact simulator
//   sweep   run cut over a size series and emit a columnar table
//
// Exit codes: 0 success, 2 usage error, 3 input error, 4 verification failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cifold/circuit.hpp"
#include "cifold/cost.hpp"
#include "cifold/fold.hpp"
#include "cifold/graph.hpp"
#include "cifold/knit.hpp"
#include "cifold/partition.hpp"
#include "cifold/qasm.hpp"
#include "cifold/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitVerify = 4;

int default_threads() {
    if (const char* env = std::getenv("CIFOLD_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

cifold::Circuit make_circuit(const std::string& kind, int size, const std::string& secret) {
    if (kind == "ghz") return cifold::gen_ghz(size);
    if (kind == "qft") return cifold::gen_qft(size);
    if (kind == "adder") {
        // size is the register width in qubits (2n+2); accept either form.
        if (size >= 4 && size % 2 == 0) return cifold::gen_adder((size - 2) / 2);
        throw cifold::Error("adder size must be an even qubit count >= 4");
    }
    if (kind == "bv") {
        if (!secret.empty()) return cifold::gen_bv(secret);
        // size counts total qubits: size-1 data bits, all-ones secret.
        if (size < 2) throw cifold::Error("bv size must be >= 2 qubits");
        return cifold::gen_bv(std::string(size - 1, '1'));
    }
    throw cifold::Error("unknown circuit kind: " + kind);
}

cifold::Circuit load_input(const std::string& path, const std::string& secret) {
    // "<kind>-<size>" descriptors are accepted anywhere a path is, so the
    // pipeline can run without temporary files.
    auto dash = path.rfind('-');
    if (dash != std::string::npos && path.find('.') == std::string::npos) {
        std::string kind = path.substr(0, dash);
        if (kind == "ghz" || kind == "bv" || kind == "adder" || kind == "qft") {
            int size = std::atoi(path.c_str() + dash + 1);
            return make_circuit(kind, size, kind == "bv" ? secret : "");
        }
    }
    std::ifstream in(path);
    if (!in) throw cifold::Error("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return cifold::parse_qasm(buf.str());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw cifold::Error("cannot write file: " + path);
    out << text;
}

struct CutOptions {
    std::string input;
    std::string secret;
    int qubit_limit = 20;
    std::string gamma_mode = "fixed";
    int min_fold_len = 3;
    bool baseline = false;
    std::string dot_path;
    std::string report_path;
    int threads = default_threads();
    uint64_t seed = 0;
};

cifold::RunReport run_cut(const CutOptions& opt, cifold::CircuitGraph* graph_out) {
    using clock = std::chrono::steady_clock;
    auto t_start = clock::now();

    cifold::RunReport rep;
    rep.input = opt.input;
    rep.qubit_limit = opt.qubit_limit;
    rep.gamma_mode = opt.gamma_mode;
    rep.min_fold_len = opt.min_fold_len;
    rep.threads = opt.threads;
    rep.seed = opt.seed;

    auto t0 = clock::now();
    cifold::Circuit c = load_input(opt.input, opt.secret);
    cifold::CircuitGraph g = cifold::build_circuit_graph(c);
    rep.timings.parse_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    rep.num_qubits = c.num_qubits;
    rep.num_gates = static_cast<int>(c.gates.size());

    cifold::PartitionConfig cfg;
    cfg.min_fold_len = opt.min_fold_len;
    cfg.threads = opt.threads;
    cfg.variation_sqrt = opt.gamma_mode == "sqrt";
    cifold::PipelineResult pr = cifold::run_pipeline(g, opt.qubit_limit, cfg);
    rep.partition = std::move(pr.partition);
    rep.original_nodes = pr.original_nodes;
    rep.folded_nodes = pr.folded_nodes;
    rep.timings.fold_ms = pr.fold_ms;
    rep.timings.module_ms = pr.module_ms;
    rep.timings.merge_ms = pr.merge_ms;
    rep.timings.refine_ms = pr.refine_ms;

    cifold::check_partition(rep.partition, g, opt.qubit_limit);

    cifold::GammaTable table;
    table.variation_sqrt = cfg.variation_sqrt;
    rep.cost = cifold::qro(rep.partition, g, table);
    if (opt.baseline)
        rep.baseline = cifold::qro(cifold::naive_baseline(g, opt.qubit_limit), g, table);

    if (!opt.dot_path.empty()) write_file(opt.dot_path, cifold::export_dot(g));
    rep.timings.total_ms =
        std::chrono::duration<double, std::milli>(clock::now() - t_start).count();
    if (graph_out) *graph_out = std::move(g);
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cifold: fold-accelerated quantum circuit cutting"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Write a benchmark circuit as OpenQASM 2.0");
    std::string gen_kind, gen_out, gen_secret;
    int gen_size = 0;
    gen->add_option("kind", gen_kind, "bv | ghz | adder | qft")->required();
    gen->add_option("size", gen_size, "number of qubits");
    gen->add_option("-o,--out", gen_out, "output path (default stdout)");
    gen->add_option("--secret", gen_secret, "BV secret bitstring (overrides size)");

    // cut
    auto* cut = app.add_subcommand("cut", "Partition a circuit and report the overhead");
    CutOptions copt;
    cut->add_option("input", copt.input, "QASM file or <kind>-<size> descriptor")->required();
    cut->add_option("-k,--qubit-limit", copt.qubit_limit, "max qubits per fragment")
        ->check(CLI::Range(2, 1 << 20));
    cut->add_option("--gamma-mode", copt.gamma_mode, "fixed | sqrt")
        ->check(CLI::IsMember({"fixed", "sqrt"}));
    cut->add_option("--min-fold-len", copt.min_fold_len)->check(CLI::Range(1, 1 << 20));
    cut->add_flag("--baseline", copt.baseline, "also run the naive contiguous baseline");
    cut->add_option("--dot", copt.dot_path, "write the circuit graph as DOT");
    cut->add_option("--report", copt.report_path, "write the report to a file");
    cut->add_option("--threads", copt.threads)->check(CLI::Range(1, 256));
    cut->add_option("--seed", copt.seed);
    cut->add_option("--secret", copt.secret, "BV secret for bv-<n> descriptors");

    // verify
    auto* verify = app.add_subcommand("verify", "Cut, reconstruct and compare to the simulator");
    CutOptions vopt;
    std::string v_observable, v_mode = "exact";
    long long v_shots = 100000;
    verify->add_option("input", vopt.input, "QASM file or <kind>-<size> descriptor")->required();
    verify->add_option("-k,--qubit-limit", vopt.qubit_limit, "max qubits per fragment")
        ->check(CLI::Range(2, 1 << 20));
    verify->add_option("--observable", v_observable, "Pauli string, default all-Z");
    verify->add_option("--mode", v_mode)->check(CLI::IsMember({"exact", "sampled"}));
    verify->add_option("--shots", v_shots)->check(CLI::Range(1ll, 1ll << 40));
    verify->add_option("--seed", vopt.seed);
    verify->add_option("--threads", vopt.threads)->check(CLI::Range(1, 256));
    verify->add_option("--min-fold-len", vopt.min_fold_len)->check(CLI::Range(1, 1 << 20));
    verify->add_option("--secret", vopt.secret, "BV secret for bv-<n> descriptors");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run cut across a size series");
    std::string s_kind, s_out;
    std::vector<int> s_sizes;
    int s_limit = 20, s_threads = default_threads();
    sweep->add_option("kind", s_kind, "bv | ghz | adder | qft")->required();
    sweep->add_option("sizes", s_sizes, "qubit counts")->required();
    sweep->add_option("-k,--qubit-limit", s_limit)->check(CLI::Range(2, 1 << 20));
    sweep->add_option("-o,--out", s_out, "output path (default stdout)");
    sweep->add_option("--threads", s_threads)->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) {
            cifold::Circuit c = make_circuit(gen_kind, gen_size, gen_secret);
            std::string text = cifold::write_qasm(c);
            if (gen_out.empty())
                std::cout << text;
            else
                write_file(gen_out, text);
            return 0;
        }

        if (*cut) {
            cifold::CircuitGraph g;
            cifold::RunReport rep = run_cut(copt, &g);
            std::string text = cifold::format_report(rep, g);
            if (!copt.report_path.empty()) write_file(copt.report_path, text);
            std::cout << text;
            return 0;
        }

        if (*verify) {
            cifold::CircuitGraph g;
            cifold::RunReport rep = run_cut(vopt, &g);
            cifold::Circuit c = load_input(vopt.input, vopt.secret);
            if (v_observable.empty()) v_observable = std::string(c.num_qubits, 'Z');
            cifold::Observable obs{v_observable};
            bool exact = v_mode == "exact";

            // The pipeline optimizes QRO, not cut count; exact reconstruction
            // enumerates the full term lattice and needs few cuts. Fall back
            // to the contiguous baseline partition when it is leaner.
            cifold::Partition part = std::move(rep.partition);
            std::string part_source = "pipeline";
            if (exact && static_cast<int>(part.cuts.size()) > cifold::kMaxExactCuts) {
                cifold::Partition base = cifold::naive_baseline(g, vopt.qubit_limit);
                if (base.cuts.size() < part.cuts.size()) {
                    part = std::move(base);
                    part_source = "baseline";
                }
            }

            double oracle = cifold::expectation(cifold::simulate(c), obs);
            double got = cifold::reconstruct_expectation(
                g, part, obs,
                exact ? cifold::ReconstructMode::Exact : cifold::ReconstructMode::Sampled, v_shots,
                vopt.seed);
            double err = std::abs(got - oracle);

            double tolerance;
            if (exact) {
                tolerance = 1e-8;
            } else {
                // 5 sigma of the Monte Carlo estimator: sqrt(prod gamma / shots).
                double lg = 0.0;
                for (const cifold::Cut& cut : part.cuts) lg += std::log10(cut.gamma);
                tolerance = 5.0 * std::sqrt(std::pow(10.0, lg) / static_cast<double>(v_shots));
            }
            std::printf("observable: %s\n", v_observable.c_str());
            std::printf("partition: %s\n", part_source.c_str());
            std::printf("cuts: %zu\n", part.cuts.size());
            std::printf("oracle: %.12f\n", oracle);
            std::printf("reconstructed: %.12f\n", got);
            std::printf("abs_error: %.3e\n", err);
            std::printf("tolerance: %.3e\n", tolerance);
            std::printf("verdict: %s\n", err <= tolerance ? "pass" : "fail");
            return err <= tolerance ? 0 : kExitVerify;
        }

        if (*sweep) {
            std::ostringstream out;
            out << "# size qro_log10 qro_base_log10 qro_prac_log10 qro_base_prac_log10 "
                   "fold_ratio runtime_ms\n";
            for (int size : s_sizes) {
                CutOptions o;
                o.input = s_kind + "-" + std::to_string(size);
                o.qubit_limit = s_limit;
                o.baseline = true;
                o.threads = s_threads;
                cifold::RunReport rep = run_cut(o, nullptr);
                char line[256];
                std::snprintf(line, sizeof line, "%d %.6f %.6f %.6f %.6f %.4f %.1f\n", size,
                              rep.cost.qro_log10_theoretical, rep.baseline->qro_log10_theoretical,
                              rep.cost.qro_log10_practical, rep.baseline->qro_log10_practical,
                              rep.original_nodes > 0 ? static_cast<double>(rep.folded_nodes) /
                                                           static_cast<double>(rep.original_nodes)
                                                     : 1.0,
                              rep.timings.total_ms);
                out << line;
            }
            if (s_out.empty())
                std::cout << out.str();
            else
                write_file(s_out, out.str());
            return 0;
        }
    } catch (const cifold::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
