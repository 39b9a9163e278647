#pragma once

#include <vector>

#include "hypersat/formula.hpp"
#include "hypersat/lasso.hpp"

namespace hypersat {

/// Direct LTL semantics on an ultimately periodic word, computed by
/// tabulating each subformula over the stem and one loop unrolling with a
/// fixpoint for the temporal operators. This is the toolkit's reference
/// oracle and must stay independent of the automaton pipeline.
bool eval_ltl_on_lasso(const LtlFormula& f, const LassoWord& w, const AtomSet& ap);

/// A finite, nonempty set of lasso traces over a common atom set.
struct FiniteModel {
    std::vector<LassoWord> traces;
};

/// Quantifier enumeration over the model's traces; the body is evaluated on
/// the zipped lasso (stems padded to a common length, joint loop = lcm).
bool eval_hyper_on_model(const HyperLtlFormula& h, const FiniteModel& m, const AtomSet& ap);

/// Zips per-variable traces into one lasso over the indexed atom set
/// (atom index order: for each prefix var, all propositions of `ap`).
LassoWord zip_traces(const std::vector<LassoWord>& traces, std::size_t ap_size);

/// Builds the indexed atom set AP x vars, ordered var-major.
AtomSet indexed_atom_set(const AtomSet& ap, const std::vector<TraceVar>& vars);

} // namespace hypersat
