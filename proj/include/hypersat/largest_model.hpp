#pragma once

#include <optional>

#include "hypersat/formula.hpp"
#include "hypersat/nba.hpp"
#include "hypersat/outcome.hpp"

namespace hypersat {

/// How the trace property enters the initial automaton. Constraining only
/// the universal position is equisatisfiable (the universal quantifier
/// ranges over every trace of a model, witnesses included) and matches the
/// reference iteration counts; constraining all positions is the eager
/// variant.
enum class PsiIncorporation { UniversalOnly, AllPositions };

struct LargestModelOptions {
    std::size_t max_iters = 64;
    double budget_ms = 300000;          // 5 min wall clock
    std::size_t state_growth_cap = 5000; // refinement automaton size bound
    PsiIncorporation incorporation = PsiIncorporation::UniversalOnly;
    ComplementOptions complement{64, 400000, 12};
    bool record_history = false;
};

struct RefinementHistory {
    // Joint-alphabet automaton and its universal projection, per iteration
    // (index 0 = initial automaton).
    std::vector<SymbolicNba> automata;
    std::vector<SymbolicNba> universal_projections;
};

/// The automaton over AP_pi u AP_pi'1 u ... u AP_pi'm whose language is the
/// set of quantifier-position zips admitted by the body and trace property.
SymbolicNba build_initial_automaton(const Specification& s,
                                    PsiIncorporation inc = PsiIncorporation::UniversalOnly);

/// One refinement: restrict every existential position to the current
/// universal projection. L(result) <= L(a).
SymbolicNba refine_step(const SymbolicNba& a, const Specification& s);

/// The universal projection A^forall, relabeled to plain AP.
SymbolicNba universal_projection(const SymbolicNba& a, const Specification& s);

/// Projection on the i-th existential position, relabeled to plain AP.
SymbolicNba existential_projection(const SymbolicNba& a, const Specification& s,
                                   std::size_t i);

struct LargestModelResult {
    SolveOutcome outcome;
    std::optional<RefinementHistory> history;
};

/// The largest-model refinement semi-procedure for forall exists^m prefixes.
LargestModelResult find_largest_model(const Specification& s,
                                      const LargestModelOptions& opts = {});

} // namespace hypersat
