#pragma once

#include "hypersat/formula.hpp"

namespace hypersat {

/// Moves the start position of both formulas under an eventuality, using a
/// fresh marker atom; the result is equisatisfiable and its body and trace
/// property are liveness. Requires both input formulas to be satisfiable as
/// plain LTL (checked semantically via automaton emptiness).
Specification liveness_lift(const Specification& s);

/// Eliminates X operators under the eventuality by letting traces range over
/// (k+1)-tuples of letters; the trace property gains the tuple-consistency
/// constraint. Requires a forall^n exists^m prefix with body F(phi), phi
/// X-only. Equisatisfiable.
Specification next_eliminate(const Specification& s);

/// Rewrites the X-only argument so that X occurs only directly on atoms.
LtlFormula push_next_to_atoms(const LtlFormula& f);

/// For bodies (G phi) /\ phi' with phi, phi' free of temporal operators:
/// drops the G. Only valid without an accompanying trace property.
HyperLtlFormula drop_outer_globally(const HyperLtlFormula& h);

} // namespace hypersat
