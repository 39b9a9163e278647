#pragma once

#include <string>
#include <vector>

#include "hypersat/router.hpp"

namespace hypersat {

struct NamedSpec {
    std::string name;
    Specification spec;
};

/// The hand-crafted suite: Inf (the three-conjunct infinite-model property),
/// the send/receive example, Enforce-n and Unsat-n.
std::vector<NamedSpec> builtin_benchmarks();

Specification enforce_spec(std::size_t n);
Specification unsat_spec(std::size_t n);
Specification inf_spec();
Specification intro_example_spec();

/// Seed-deterministic random specification: a uniform random AST of the given
/// size over the LTL operators, atoms drawn from `ap_count` propositions and
/// assigned a uniformly random bound trace variable.
Specification random_spec(std::uint64_t seed, std::size_t ast_size, std::size_t ap_count,
                          const std::vector<Quant>& prefix);

struct BenchRecord {
    std::string instance;
    std::string fragment;
    std::string method;
    Verdict verdict = Verdict::Unknown;
    std::size_t iterations = 0; // largest-model refinement count when applicable
    double time_ms = 0;
    bool has_certificate = false;
    std::string note;
};

struct BenchOptions {
    std::string suite = "table3"; // or "random"
    std::uint64_t seed = 1;
    std::size_t random_count = 100;
    std::size_t size_min = 15;
    std::size_t size_max = 20;
    double per_instance_timeout_ms = 300000;
    bool cross_check = false;
    std::size_t jobs = 1;
};

struct RunReport {
    std::vector<BenchRecord> records;
    std::size_t solved = 0;
    std::size_t total = 0;

    std::string to_json() const;
    std::string to_table() const;
};

std::string record_to_json(const BenchRecord& r);

RunReport run_benchmarks(const BenchOptions& opts);

} // namespace hypersat
