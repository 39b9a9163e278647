#pragma once

#include <optional>

#include "hypersat/eval.hpp"
#include "hypersat/formula.hpp"

namespace hypersat {

struct BoundedSearchOptions {
    std::size_t max_traces = 3;
    std::size_t max_stem = 4;
    std::size_t max_loop = 3;
    std::size_t budget = 5000000; // candidate-set evaluations
    double budget_ms = 1e9;       // wall clock
};

enum class BoundedStatus { Found, NoneInBounds, BudgetExceeded };

struct BoundedSearchResult {
    BoundedStatus status = BoundedStatus::NoneInBounds;
    std::optional<FiniteModel> model;
    std::size_t sets_checked = 0;
};

/// Exhaustive model search up to the bounds: candidate traces are the
/// canonical lassos over AP that satisfy the trace property individually;
/// candidate sets are enumerated in lexicographic order (sorted trace sets).
/// The comparison baseline: finds smallest models, cannot prove
/// unsatisfiability beyond the bounds.
BoundedSearchResult bounded_model_search(const Specification& s,
                                         const BoundedSearchOptions& opts = {});

} // namespace hypersat
