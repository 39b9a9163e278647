#pragma once

#include "hypersat/bounded.hpp"
#include "hypersat/formula.hpp"
#include "hypersat/outcome.hpp"

namespace hypersat {

struct XFragmentOptions {
    std::size_t prefix_cap = 4096;    // |M| before degrading to unknown
    std::size_t subset_enum_cap = 16; // |M| bound for full subset enumeration
};

/// Decider for X-only bodies: computes the extendable (k+1)-prefixes M of the
/// trace property and searches for a nonempty M' <= M satisfying the
/// hyperproperty on prefixes. Sat certificates extend each prefix to a lasso
/// through the trace-property automaton.
SolveOutcome decide_x_fragment(const Specification& s, const XFragmentOptions& opts = {});

/// NP decider for forall* exists* bodies that are conjunctions of
/// eventualities with nothing outside the F operators (no trace property).
/// Reduces to propositional satisfiability of the collapsed formula.
SolveOutcome decide_eventuality_conjunction(const HyperLtlFormula& h, const AtomSet& ap);

/// Splits F-conjunction plus propositional remainder into the two deciders
/// above; satisfiable iff both parts are.
SolveOutcome decide_eventuality_conjunction_with_prop(const HyperLtlFormula& h,
                                                      const AtomSet& ap);

/// The collapsed propositional formula of the eventuality decider (exposed
/// for DIMACS emission).
LtlFormula eventuality_zeta(const HyperLtlFormula& h, const AtomSet& ap);

} // namespace hypersat
