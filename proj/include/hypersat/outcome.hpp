#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypersat/eval.hpp"
#include "hypersat/nba.hpp"

namespace hypersat {

enum class Verdict { Sat, Unsat, Unknown };

std::string to_string(Verdict v);

/// A pushdown run lasso: rule indices of the stem and of the repeating
/// segment (which contains at least one W-tagged rule).
struct PdsRunLasso {
    std::vector<std::size_t> stem_rules;
    std::vector<std::size_t> loop_rules;
};

struct SolveOutcome {
    Verdict verdict = Verdict::Unknown;
    std::string method;
    std::size_t iterations = 0;
    double elapsed_ms = 0.0;

    // Certificates. Sat outcomes carry at least one of these.
    std::optional<SymbolicNba> model_automaton; // largest model over AP
    std::optional<FiniteModel> finite_model;
    std::optional<PdsRunLasso> pds_run;
    std::string note; // counterexample / resource explanation
};

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "sat";
        case Verdict::Unsat: return "unsat";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

} // namespace hypersat
