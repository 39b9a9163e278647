#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hypersat/bench.hpp"
#include "hypersat/finite_deciders.hpp"
#include "hypersat/fol.hpp"
#include "hypersat/parser.hpp"
#include "hypersat/sat.hpp"

using namespace hypersat;

namespace {

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::Sat: return 0;
        case Verdict::Unsat: return 1;
        case Verdict::Unknown: return 2;
    }
    return 3;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int cmd_solve(const std::string& file, const std::string& mode_str, std::size_t max_iters,
              double timeout_s, bool json, const std::string& emit_hoa,
              const std::string& emit_tptp_path, const std::string& emit_pds,
              const std::string& emit_cnf, const std::string& prover, bool cross_check) {
    Specification spec = parse_specification_file(file);

    RouteOptions opts;
    opts.mode = solve_mode_from_string(mode_str);
    opts.max_iters = max_iters;
    opts.timeout_ms = timeout_s * 1000.0;
    opts.prover_command = prover;
    opts.cross_check = cross_check;
    opts.use_fol = opts.mode == SolveMode::Fol || !prover.empty();

    if (!emit_tptp_path.empty()) {
        write_file(emit_tptp_path, emit_tptp(encode_temporal_safety(spec)));
    }
    if (!emit_pds.empty()) {
        EventualityResult r = decide_forall_exists_eventually(spec);
        if (r.system) write_file(emit_pds, r.system->rules_to_string());
    }
    if (!emit_cnf.empty()) {
        write_file(emit_cnf, to_cnf(eventuality_zeta(spec.hyper, spec.ap)).to_dimacs());
    }

    RouteResult result = route(spec, opts);

    if (!emit_hoa.empty() && result.outcome.model_automaton) {
        write_file(emit_hoa, export_hoa(*result.outcome.model_automaton, "largest-model"));
    }

    if (json) {
        BenchRecord rec;
        rec.instance = file;
        rec.fragment = to_string(result.fragment);
        rec.method = result.outcome.method;
        rec.verdict = result.outcome.verdict;
        rec.iterations = result.outcome.iterations;
        rec.time_ms = result.outcome.elapsed_ms;
        rec.has_certificate = result.outcome.model_automaton.has_value() ||
                              result.outcome.finite_model.has_value() ||
                              result.outcome.pds_run.has_value();
        rec.note = result.outcome.note;
        std::cout << record_to_json(rec) << "\n";
    } else {
        std::cout << "fragment: " << to_string(result.fragment) << "\n";
        std::cout << "method:   " << result.outcome.method << "\n";
        std::cout << "verdict:  " << to_string(result.outcome.verdict) << "\n";
        if (result.outcome.method == "largest-model") {
            std::cout << "iterations: " << result.outcome.iterations << "\n";
        }
        std::cout << "time_ms:  " << result.outcome.elapsed_ms << "\n";
        if (!result.outcome.note.empty()) {
            std::cout << "note:     " << result.outcome.note << "\n";
        }
        if (result.outcome.finite_model) {
            std::cout << "model (" << result.outcome.finite_model->traces.size()
                      << " traces):\n";
            for (const auto& t : result.outcome.finite_model->traces) {
                std::cout << "  " << t.to_string(spec.ap) << "\n";
            }
        }
    }
    return verdict_exit_code(result.outcome.verdict);
}

int cmd_bench(const std::string& suite, std::uint64_t seed, bool json, std::size_t count,
              std::size_t size_min, std::size_t size_max, double timeout_s, bool cross_check,
              std::size_t jobs) {
    BenchOptions opts;
    opts.suite = suite;
    opts.seed = seed;
    opts.random_count = count;
    opts.size_min = size_min;
    opts.size_max = size_max;
    opts.per_instance_timeout_ms = timeout_s * 1000.0;
    opts.cross_check = cross_check;
    opts.jobs = jobs;
    RunReport report = run_benchmarks(opts);
    std::cout << (json ? report.to_json() : report.to_table());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"satisfiability toolkit for LTL + forall-exists* HyperLTL specifications"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "decide one specification file");
    std::string file;
    std::string mode = "auto";
    std::size_t max_iters = 64;
    double timeout_s = 300;
    bool json = false;
    std::string emit_hoa, emit_tptp_path, emit_pds, emit_cnf, prover;
    bool cross_check = false;
    solve->add_option("--file", file, "specification file (ltl:/hyperltl: sections)")
        ->required();
    solve->add_option("--mode", mode, "auto|largest|pushdown|bounded|xfrag|np|fol");
    solve->add_option("--max-iters", max_iters, "refinement iteration cap");
    solve->add_option("--timeout", timeout_s, "budget in seconds");
    solve->add_flag("--json", json, "machine-readable output");
    solve->add_option("--emit-hoa", emit_hoa, "write the Sat model automaton as HOA");
    solve->add_option("--emit-tptp", emit_tptp_path, "write the FOL encoding as TPTP");
    solve->add_option("--emit-pds", emit_pds, "dump the pushdown system rules");
    solve->add_option("--emit-cnf", emit_cnf, "write the collapsed eventuality formula as DIMACS");
    solve->add_option("--prover", prover, "prover command ({file}/{timeout} placeholders)");
    solve->add_flag("--cross-check", cross_check, "run all applicable methods and compare");

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    std::string suite = "table3";
    std::uint64_t seed = 1;
    bool bjson = false;
    std::size_t count = 100, size_min = 15, size_max = 20, jobs = 1;
    double btimeout_s = 300;
    bool bcross = false;
    bench->add_option("--suite", suite, "table3|random");
    bench->add_option("--seed", seed, "random suite seed");
    bench->add_flag("--json", bjson, "machine-readable output");
    bench->add_option("--count", count, "random instances per size");
    bench->add_option("--size-min", size_min, "smallest AST size");
    bench->add_option("--size-max", size_max, "largest AST size");
    bench->add_option("--timeout", btimeout_s, "per-instance budget in seconds");
    bench->add_flag("--cross-check", bcross, "cross-check every instance");
    bench->add_option("--jobs", jobs, "worker pool width");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            return cmd_solve(file, mode, max_iters, timeout_s, json, emit_hoa, emit_tptp_path,
                             emit_pds, emit_cnf, prover, cross_check);
        }
        return cmd_bench(suite, seed, bjson, count, size_min, size_max, btimeout_s, bcross,
                         jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
