#include <functional>

#include "hypersat/eval.hpp"
#include "hypersat/formula.hpp"
#include "hypersat/ltl2nba.hpp"
#include "hypersat/nba.hpp"

namespace hypersat {

FragmentTag classify_fragment(const Specification& s) {
    const HyperLtlFormula& h = s.hyper;
    const LtlFormula& body = h.body();

    if (is_x_only(body)) return FragmentTag::XOnly;

    if (h.is_forall_exists_star() && body.op() == LtlOp::Eventually &&
        is_x_only(body.child(0))) {
        return FragmentTag::SingleEventuality;
    }

    if (h.is_forall_star_exists_star() && split_eventuality_conjunction(body)) {
        return FragmentTag::EventualityConjunction;
    }

    // Temporal safety is a semantic test on the body read as an LTL formula
    // over indexed atoms. The check runs only inside syntactic size guards,
    // and resource exhaustion falls through; both are deterministic.
    std::function<std::size_t(const LtlFormula&)> temporal_nodes =
        [&](const LtlFormula& f) {
            std::size_t n = is_temporal(f.op()) ? 1 : 0;
            for (std::size_t i = 0; i < f.arity(); ++i) n += temporal_nodes(f.child(i));
            return n;
        };
    if (temporal_nodes(body) <= 8) {
        std::vector<TraceVar> vars;
        for (const auto& [q, v] : h.prefix()) {
            (void)q;
            vars.push_back(v);
        }
        try {
            AtomSet indexed = indexed_atom_set(s.ap, vars);
            SymbolicNba a = reduce(translate(body, indexed));
            ComplementOptions budgeted{12, 60000, 10};
            if (a.num_states <= 80 && is_safety_language(a, budgeted)) {
                return FragmentTag::TemporalSafety;
            }
        } catch (const ResourceLimitError&) {
        } catch (const std::invalid_argument&) {
            // indexed alphabet too large
        }
    }

    if (h.is_forall_exists_star()) return FragmentTag::ForallExistsStar;
    return FragmentTag::General;
}

} // namespace hypersat
