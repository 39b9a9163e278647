#include "hypersat/largest_model.hpp"

#include <chrono>

#include "hypersat/eval.hpp"
#include "hypersat/ltl2nba.hpp"

namespace hypersat {

namespace {

using Clock = std::chrono::steady_clock;

void check_prefix_shape(const Specification& s) {
    if (!s.hyper.is_forall_exists_star()) {
        throw std::invalid_argument(
            "largest model: prefix must be a single forall followed by exists*");
    }
    if (s.hyper.prefix().empty() || s.hyper.prefix()[0].first != Quant::Forall) {
        throw std::invalid_argument("largest model: the universal must come first");
    }
}

std::vector<TraceVar> all_vars(const Specification& s) {
    std::vector<TraceVar> vars;
    for (const auto& [q, v] : s.hyper.prefix()) {
        (void)q;
        vars.push_back(v);
    }
    return vars;
}

/// Names of the indexed atoms of one position block.
std::vector<std::string> position_atoms(const Specification& s, const TraceVar& v) {
    std::vector<std::string> names;
    for (const auto& a : s.ap.names()) names.push_back(indexed_atom(a, v.id));
    return names;
}

SymbolicNba project_position(const SymbolicNba& a, const Specification& s,
                             const TraceVar& v) {
    SymbolicNba p = project_exists(a, position_atoms(s, v));
    std::vector<std::pair<std::string, std::string>> back;
    for (const auto& n : s.ap.names()) back.emplace_back(indexed_atom(n, v.id), n);
    return reduce(relabel(p, back));
}

} // namespace

SymbolicNba build_initial_automaton(const Specification& s, PsiIncorporation inc) {
    check_prefix_shape(s);
    std::vector<TraceVar> vars = all_vars(s);
    AtomSet joint = indexed_atom_set(s.ap, vars);

    // Translate top-level conjuncts separately and intersect, reducing in
    // between; equivalent to translating the conjunction at once but keeps
    // intermediate automata small for bodies with many conjuncts.
    std::vector<LtlFormula> conjuncts;
    {
        std::vector<LtlFormula> stack{s.hyper.body()};
        while (!stack.empty()) {
            LtlFormula f = stack.back();
            stack.pop_back();
            if (f.op() == LtlOp::And) {
                stack.push_back(f.child(0));
                stack.push_back(f.child(1));
            } else {
                conjuncts.push_back(f);
            }
        }
    }
    SymbolicNba acc = reduce(translate(conjuncts[0], joint));
    for (std::size_t i = 1; i < conjuncts.size(); ++i) {
        acc = reduce(intersect(acc, reduce(translate(conjuncts[i], joint))));
    }

    SymbolicNba psi_aut = reduce(translate(s.ltl, s.ap));
    auto psi_on = [&](const TraceVar& v) {
        std::vector<std::pair<std::string, std::string>> ren;
        for (const auto& n : s.ap.names()) ren.emplace_back(n, indexed_atom(n, v.id));
        return extend_atoms(relabel(psi_aut, ren), joint);
    };

    if (s.ltl.op() != LtlOp::True) {
        acc = reduce(intersect(acc, psi_on(vars[0])));
        if (inc == PsiIncorporation::AllPositions) {
            for (std::size_t i = 1; i < vars.size(); ++i) {
                acc = reduce(intersect(acc, psi_on(vars[i])));
            }
        }
    }
    return acc;
}

SymbolicNba universal_projection(const SymbolicNba& a, const Specification& s) {
    check_prefix_shape(s);
    return project_position(a, s, s.hyper.prefix()[0].second);
}

SymbolicNba existential_projection(const SymbolicNba& a, const Specification& s,
                                   std::size_t i) {
    check_prefix_shape(s);
    auto evars = s.hyper.existential_vars();
    return project_position(a, s, evars.at(i));
}

SymbolicNba refine_step(const SymbolicNba& a, const Specification& s) {
    check_prefix_shape(s);
    SymbolicNba uni = universal_projection(a, s);
    SymbolicNba acc = a;
    for (const auto& v : s.hyper.existential_vars()) {
        std::vector<std::pair<std::string, std::string>> ren;
        for (const auto& n : s.ap.names()) ren.emplace_back(n, indexed_atom(n, v.id));
        SymbolicNba uni_on = extend_atoms(relabel(uni, ren), a.atoms);
        acc = reduce(intersect(acc, uni_on));
    }
    return acc;
}

LargestModelResult find_largest_model(const Specification& s,
                                      const LargestModelOptions& opts) {
    auto start = Clock::now();
    auto elapsed_ms = [&]() {
        return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    };
    check_prefix_shape(s);

    LargestModelResult result;
    SolveOutcome& out = result.outcome;
    out.method = "largest-model";
    if (opts.record_history) result.history = RefinementHistory{};

    SymbolicNba current;
    try {
        current = reduce(build_initial_automaton(s, opts.incorporation));
    } catch (const ResourceLimitError& e) {
        out.verdict = Verdict::Unknown;
        out.note = std::string("initial automaton construction hit a cap: ") + e.what();
        out.elapsed_ms = elapsed_ms();
        return result;
    }

    for (std::size_t iter = 0;; ++iter) {
        if (elapsed_ms() > opts.budget_ms) {
            out.verdict = Verdict::Unknown;
            out.iterations = iter;
            out.note = "wall-clock budget exhausted";
            break;
        }
        SymbolicNba uni;
        try {
            uni = universal_projection(current, s);
        } catch (const ResourceLimitError& e) {
            out.verdict = Verdict::Unknown;
            out.iterations = iter;
            out.note = std::string("projection hit a cap: ") + e.what();
            break;
        }
        if (result.history) {
            result.history->automata.push_back(current);
            result.history->universal_projections.push_back(uni);
        }

        if (is_empty(uni)) {
            out.verdict = Verdict::Unsat;
            out.iterations = iter;
            out.note = "universal projection became empty";
            break;
        }

        bool contained = true;
        std::optional<LassoWord> escape;
        try {
            const std::size_t m = s.hyper.existential_count();
            if (!is_structurally_universal(uni)) {
                ComplementOptions copts = opts.complement;
                copts.budget_ms = std::min(copts.budget_ms,
                                           std::max(50.0, opts.budget_ms - elapsed_ms()));
                SymbolicNba comp = complement(uni, copts);
                for (std::size_t i = 0; i < m && contained; ++i) {
                    SymbolicNba exi = existential_projection(current, s, i);
                    auto cex = find_accepting_lasso(intersect(exi, comp));
                    if (cex) {
                        contained = false;
                        escape = cex;
                    }
                }
            }
        } catch (const ResourceLimitError& e) {
            out.verdict = Verdict::Unknown;
            out.iterations = iter;
            out.note = std::string("containment test hit a resource cap: ") + e.what();
            break;
        }

        if (contained) {
            out.verdict = Verdict::Sat;
            out.iterations = iter;
            out.model_automaton = uni;
            break;
        }
        (void)escape;

        if (iter >= opts.max_iters) {
            out.verdict = Verdict::Unknown;
            out.iterations = iter;
            out.note = "iteration cap reached";
            break;
        }
        try {
            current = refine_step(current, s);
        } catch (const ResourceLimitError& e) {
            out.verdict = Verdict::Unknown;
            out.iterations = iter + 1;
            out.note = std::string("refinement hit a cap: ") + e.what();
            break;
        }
        if (current.num_states > opts.state_growth_cap) {
            out.verdict = Verdict::Unknown;
            out.iterations = iter + 1;
            out.note = "refinement automaton exceeded the growth cap";
            break;
        }
    }
    out.elapsed_ms = elapsed_ms();
    return result;
}

} // namespace hypersat
