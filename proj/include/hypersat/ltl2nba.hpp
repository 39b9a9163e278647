#pragma once

#include <vector>

#include "hypersat/formula.hpp"
#include "hypersat/nba.hpp"

namespace hypersat {

/// Buchi automaton with a list of accepting sets (one per until obligation).
/// An empty list means all runs accept.
struct GeneralizedNba {
    AtomSet atoms;
    std::size_t num_states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::vector<std::size_t>> accepting_sets;
    std::vector<SymbolicNba::Edge> edges;
};

/// Closure-tableau translation via a generalized-Buchi intermediate.
/// For every lasso w: member_lasso(translate(f, atoms), w) equals
/// eval_ltl_on_lasso(f, w, atoms).
SymbolicNba translate(const LtlFormula& f, const AtomSet& atoms);

/// The generalized intermediate, exposed for tests.
GeneralizedNba translate_generalized(const LtlFormula& f, const AtomSet& atoms);

/// Counter construction; language preserved.
SymbolicNba degeneralize(const GeneralizedNba& g);

/// Automaton whose states carry the current letter.
struct StateLabeledNba {
    AtomSet atoms;
    std::size_t num_states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::size_t> accepting;
    std::vector<Letter> labels;                          // per state
    std::vector<std::pair<std::size_t, std::size_t>> edges; // (src, dst)

    bool is_accepting(std::size_t q) const;
};

/// Expands guards to full letters over the automaton's atom set; the
/// state-labeling semantics yields the same language. Guarded by an atom cap.
StateLabeledNba to_state_labeled(const SymbolicNba& a, std::size_t atom_cap = 8);

/// Removes unreachable and empty states; language unchanged.
StateLabeledNba sl_trim(const StateLabeledNba& a);

/// Back-conversion for oracle tests.
SymbolicNba sl_to_nba(const StateLabeledNba& a);

} // namespace hypersat
