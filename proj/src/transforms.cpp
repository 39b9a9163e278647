#include "hypersat/transforms.hpp"

#include <algorithm>

#include "hypersat/eval.hpp"
#include "hypersat/ltl2nba.hpp"
#include "hypersat/nba.hpp"

namespace hypersat {

namespace {

std::string fresh_marker_name(const AtomSet& ap) {
    std::string base = "__dag";
    if (!ap.contains(base)) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!ap.contains(cand)) return cand;
    }
}

} // namespace

Specification liveness_lift(const Specification& s) {
    // The construction assumes both formulas are satisfiable; check via
    // translation and emptiness rather than syntactic heuristics.
    if (is_empty(translate(s.ltl, s.ap))) {
        throw std::invalid_argument("liveness_lift: trace property is unsatisfiable");
    }
    {
        std::vector<TraceVar> vars;
        for (const auto& [q, v] : s.hyper.prefix()) {
            (void)q;
            vars.push_back(v);
        }
        AtomSet indexed = indexed_atom_set(s.ap, vars);
        if (is_empty(translate(s.hyper.body(), indexed))) {
            throw std::invalid_argument("liveness_lift: hyper body is unsatisfiable");
        }
    }

    std::string dag = fresh_marker_name(s.ap);
    AtomSet ap2 = s.ap;
    ap2.add(dag);

    using F = LtlFormula;
    // psi' = F(dag & (X G !dag) & psi)
    F psi2 = F::eventually(F::make_and(
        F::make_and(F::atom(dag), F::next(F::globally(F::make_not(F::atom(dag))))), s.ltl));

    // body' = F( /\_i dag_{pi_i} & [X G /\_i !dag_{pi_i}] & body )
    std::vector<F> dag_all;
    std::vector<F> not_dag_all;
    for (const auto& [q, v] : s.hyper.prefix()) {
        (void)q;
        dag_all.push_back(F::atom(indexed_atom(dag, v.id)));
        not_dag_all.push_back(F::make_not(F::atom(indexed_atom(dag, v.id))));
    }
    F body2 = F::eventually(F::make_and(
        F::make_and(F::conj_all(dag_all), F::next(F::globally(F::conj_all(not_dag_all)))),
        s.hyper.body()));

    Specification out;
    out.ap = ap2;
    out.ltl = psi2;
    out.hyper = HyperLtlFormula(s.hyper.prefix(), body2);
    return out;
}

LtlFormula push_next_to_atoms(const LtlFormula& f) {
    using F = LtlFormula;
    struct Impl {
        static F go(const F& f, std::size_t depth) {
            switch (f.op()) {
                case LtlOp::Atom: {
                    F out = f;
                    for (std::size_t i = 0; i < depth; ++i) out = F::next(out);
                    return out;
                }
                case LtlOp::True:
                case LtlOp::False:
                    return f;
                case LtlOp::Next:
                    return go(f.child(0), depth + 1);
                case LtlOp::Not:
                    return F::make_not(go(f.child(0), depth));
                case LtlOp::And:
                    return F::make_and(go(f.child(0), depth), go(f.child(1), depth));
                case LtlOp::Or:
                    return F::make_or(go(f.child(0), depth), go(f.child(1), depth));
                case LtlOp::Implies:
                    return F::implies(go(f.child(0), depth), go(f.child(1), depth));
                case LtlOp::Iff:
                    return F::iff(go(f.child(0), depth), go(f.child(1), depth));
                default:
                    throw std::invalid_argument(
                        "push_next_to_atoms: formula is not X-only");
            }
        }
    };
    return Impl::go(f, 0);
}

namespace {

/// Copy-atom naming for position j: base name plus the digit suffix,
/// disambiguated against existing atoms.
std::string copy_name(const AtomSet& ap, const std::string& base, std::size_t j) {
    std::string cand = base + std::to_string(j);
    while (ap.contains(cand)) cand = "_" + cand;
    return cand;
}

LtlFormula rewrite_x_atoms(const LtlFormula& f, const AtomSet& ap,
                           const std::vector<std::vector<std::string>>& copies) {
    using F = LtlFormula;
    struct Impl {
        const AtomSet& ap;
        const std::vector<std::vector<std::string>>& copies;
        F go(const F& f, std::size_t depth) const {
            switch (f.op()) {
                case LtlOp::Atom: {
                    auto split = split_indexed_atom(f.atom_name());
                    if (!split) throw std::logic_error("expected indexed atom");
                    auto idx = ap.index_of(split->first);
                    return F::atom(indexed_atom(copies[depth][*idx], split->second));
                }
                case LtlOp::True:
                case LtlOp::False:
                    return f;
                case LtlOp::Next:
                    return go(f.child(0), depth + 1);
                case LtlOp::Not:
                    return F::make_not(go(f.child(0), depth));
                case LtlOp::And:
                    return F::make_and(go(f.child(0), depth), go(f.child(1), depth));
                case LtlOp::Or:
                    return F::make_or(go(f.child(0), depth), go(f.child(1), depth));
                case LtlOp::Implies:
                    return F::implies(go(f.child(0), depth), go(f.child(1), depth));
                case LtlOp::Iff:
                    return F::iff(go(f.child(0), depth), go(f.child(1), depth));
                default:
                    throw std::invalid_argument("next_eliminate: body is not F(X-only)");
            }
        }
    };
    return Impl{ap, copies}.go(f, 0);
}

} // namespace

Specification next_eliminate(const Specification& s) {
    if (!s.hyper.is_forall_star_exists_star()) {
        throw std::invalid_argument("next_eliminate: prefix must be forall* exists*");
    }
    const LtlFormula& body = s.hyper.body();
    if (body.op() != LtlOp::Eventually || !is_x_only(body.child(0))) {
        throw std::invalid_argument("next_eliminate: body must be F(X-only)");
    }
    LtlFormula inner = push_next_to_atoms(body.child(0));
    const std::size_t k = inner.x_depth();

    // Copy alphabets AP_0 .. AP_k.
    std::vector<std::vector<std::string>> copies(k + 1,
                                                 std::vector<std::string>(s.ap.size()));
    AtomSet ap2;
    for (std::size_t j = 0; j <= k; ++j) {
        for (std::size_t i = 0; i < s.ap.size(); ++i) {
            copies[j][i] = copy_name(s.ap, s.ap.name(i), j);
            ap2.add(copies[j][i]);
        }
    }

    using F = LtlFormula;
    // psi' = psi_0 & G /\_{i<k} /\_a (a_{i+1} <-> X a_i)
    std::vector<std::pair<std::string, std::string>> to_zero;
    for (std::size_t i = 0; i < s.ap.size(); ++i) {
        to_zero.emplace_back(s.ap.name(i), copies[0][i]);
    }
    F psi2 = s.ltl.rename_atoms(to_zero);
    if (k > 0) {
        std::vector<F> consistency;
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < s.ap.size(); ++i) {
                consistency.push_back(
                    F::iff(F::atom(copies[j + 1][i]), F::next(F::atom(copies[j][i]))));
            }
        }
        psi2 = F::make_and(psi2, F::globally(F::conj_all(consistency)));
    }

    F body2 = F::eventually(rewrite_x_atoms(inner, s.ap, copies));

    Specification out;
    out.ap = ap2;
    out.ltl = psi2;
    out.hyper = HyperLtlFormula(s.hyper.prefix(), body2);
    return out;
}

HyperLtlFormula drop_outer_globally(const HyperLtlFormula& h) {
    std::vector<LtlFormula> conjuncts;
    {
        // Flatten the top-level conjunction.
        std::vector<LtlFormula> stack{h.body()};
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
        std::reverse(conjuncts.begin(), conjuncts.end());
    }
    std::optional<LtlFormula> g_arg;
    std::vector<LtlFormula> rest;
    for (const auto& c : conjuncts) {
        if (c.op() == LtlOp::Globally) {
            if (g_arg) {
                throw std::invalid_argument("drop_outer_globally: more than one G conjunct");
            }
            if (c.child(0).contains_temporal()) {
                throw std::invalid_argument(
                    "drop_outer_globally: temporal operator inside G is not allowed");
            }
            g_arg = c.child(0);
        } else if (!c.contains_temporal()) {
            rest.push_back(c);
        } else {
            throw std::invalid_argument(
                "drop_outer_globally: body must be (G phi) /\\ phi' with propositional phi'");
        }
    }
    if (!g_arg) {
        throw std::invalid_argument("drop_outer_globally: no G conjunct");
    }
    LtlFormula body = *g_arg;
    for (const auto& r : rest) body = LtlFormula::make_and(body, r);
    return HyperLtlFormula(h.prefix(), body);
}

} // namespace hypersat
