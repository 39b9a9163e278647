#include "hypersat/finite_deciders.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "hypersat/ltl2nba.hpp"
#include "hypersat/sat.hpp"
#include "hypersat/transforms.hpp"

namespace hypersat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

using Prefix = std::vector<Letter>; // k+1 letters

/// Evaluates an X-only body on an assignment of trace variables to prefixes.
bool eval_on_prefixes(const LtlFormula& f, const AtomSet& ap,
                      const std::map<std::string, const Prefix*>& env, std::size_t offset) {
    switch (f.op()) {
        case LtlOp::Atom: {
            auto split = split_indexed_atom(f.atom_name());
            if (!split) throw std::logic_error("x-fragment: unindexed atom");
            const Prefix* p = env.at(split->second);
            auto idx = ap.index_of(split->first);
            if (offset >= p->size()) throw std::logic_error("x-fragment: offset out of range");
            return letter_has((*p)[offset], *idx);
        }
        case LtlOp::True: return true;
        case LtlOp::False: return false;
        case LtlOp::Not: return !eval_on_prefixes(f.child(0), ap, env, offset);
        case LtlOp::And:
            return eval_on_prefixes(f.child(0), ap, env, offset) &&
                   eval_on_prefixes(f.child(1), ap, env, offset);
        case LtlOp::Or:
            return eval_on_prefixes(f.child(0), ap, env, offset) ||
                   eval_on_prefixes(f.child(1), ap, env, offset);
        case LtlOp::Implies:
            return !eval_on_prefixes(f.child(0), ap, env, offset) ||
                   eval_on_prefixes(f.child(1), ap, env, offset);
        case LtlOp::Iff:
            return eval_on_prefixes(f.child(0), ap, env, offset) ==
                   eval_on_prefixes(f.child(1), ap, env, offset);
        case LtlOp::Next:
            return eval_on_prefixes(f.child(0), ap, env, offset + 1);
        default:
            throw std::invalid_argument("body is not X-only");
    }
}

/// Quantifier evaluation of the hyper body on a set of prefixes.
bool eval_hyper_on_prefixes(const HyperLtlFormula& h, const AtomSet& ap,
                            const std::vector<Prefix>& set) {
    std::map<std::string, const Prefix*> env;
    std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
        if (depth == h.prefix().size()) {
            return eval_on_prefixes(h.body(), ap, env, 0);
        }
        const auto& [q, v] = h.prefix()[depth];
        for (const auto& p : set) {
            env[v.id] = &p;
            bool sub = rec(depth + 1);
            if (q == Quant::Forall && !sub) {
                env.erase(v.id);
                return false;
            }
            if (q == Quant::Exists && sub) {
                env.erase(v.id);
                return true;
            }
        }
        env.erase(v.id);
        return q == Quant::Forall;
    };
    return rec(0);
}

/// States of `a` reachable by reading `u` from the initial states.
std::vector<std::size_t> read_prefix(const SymbolicNba& a,
                                     const std::vector<std::vector<std::size_t>>& adj,
                                     const Prefix& u) {
    std::set<std::size_t> cur(a.initial.begin(), a.initial.end());
    for (Letter l : u) {
        std::set<std::size_t> next;
        for (auto q : cur) {
            for (auto ei : adj[q]) {
                if (a.edges[ei].guard.eval(l)) next.insert(a.edges[ei].dst);
            }
        }
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return {cur.begin(), cur.end()};
}

/// Extends a prefix to a full lasso through the trimmed automaton.
LassoWord extend_prefix(const SymbolicNba& a,
                        const std::vector<std::vector<std::size_t>>& adj, const Prefix& u) {
    auto states = read_prefix(a, adj, u);
    if (states.empty()) throw std::logic_error("prefix not extendable");
    SymbolicNba from = a;
    from.initial = {states.front()};
    auto rest = find_accepting_lasso(from);
    if (!rest) throw std::logic_error("trimmed automaton has an empty state");
    LassoWord w;
    w.stem = u;
    w.stem.insert(w.stem.end(), rest->stem.begin(), rest->stem.end());
    w.loop = rest->loop;
    return w;
}

} // namespace

SolveOutcome decide_x_fragment(const Specification& s, const XFragmentOptions& opts) {
    auto start = Clock::now();
    if (!is_x_only(s.hyper.body())) {
        throw std::invalid_argument("decide_x_fragment: body must be X-only");
    }
    SolveOutcome out;
    out.method = "x-fragment";

    const std::size_t k = s.hyper.body().x_depth();
    SymbolicNba aut = trim(translate(s.ltl, s.ap));
    if (aut.num_states == 0 || aut.initial.empty()) {
        out.verdict = Verdict::Unsat;
        out.note = "trace property is unsatisfiable";
        out.elapsed_ms = ms_since(start);
        return out;
    }
    auto adj = aut.adjacency();

    // M: all (k+1)-letter prefixes extendable to a trace of the property.
    std::vector<Prefix> m_set;
    const std::size_t letters = s.ap.letter_count();
    Prefix u(k + 1, 0);
    while (true) {
        if (!read_prefix(aut, adj, u).empty()) {
            m_set.push_back(u);
            if (m_set.size() > opts.prefix_cap) {
                out.verdict = Verdict::Unknown;
                out.note = "extendable-prefix set exceeds cap";
                out.elapsed_ms = ms_since(start);
                return out;
            }
        }
        std::size_t i = 0;
        for (; i <= k; ++i) {
            if (++u[i] < letters) break;
            u[i] = 0;
        }
        if (i > k) break;
    }

    std::optional<std::vector<Prefix>> chosen;
    if (s.hyper.is_forall_star_exists_star() && s.hyper.universal_count() <= 1) {
        // Models of forall exists* prefixes are closed under union: iterate
        // removal of universally-failing prefixes to the largest candidate.
        std::vector<Prefix> cur = m_set;
        bool changed = true;
        while (changed && !cur.empty()) {
            changed = false;
            std::vector<Prefix> next;
            for (const auto& u2 : cur) {
                // Keep u2 iff the body holds when the universal is bound to it.
                const HyperLtlFormula& h = s.hyper;
                bool keep = true;
                if (s.hyper.universal_count() == 1) {
                    // Evaluate with the universal pinned by constructing the
                    // check directly: forall-bound var maps to u2.
                    std::map<std::string, const Prefix*> env;
                    std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
                        if (depth == h.prefix().size()) {
                            return eval_on_prefixes(h.body(), s.ap, env, 0);
                        }
                        const auto& [q, v] = h.prefix()[depth];
                        if (q == Quant::Forall) {
                            env[v.id] = &u2;
                            bool r = rec(depth + 1);
                            env.erase(v.id);
                            return r;
                        }
                        for (const auto& p : cur) {
                            env[v.id] = &p;
                            if (rec(depth + 1)) {
                                env.erase(v.id);
                                return true;
                            }
                        }
                        env.erase(v.id);
                        return false;
                    };
                    keep = rec(0);
                }
                if (keep) {
                    next.push_back(u2);
                } else {
                    changed = true;
                }
            }
            cur = std::move(next);
        }
        if (!cur.empty() && eval_hyper_on_prefixes(s.hyper, s.ap, cur)) {
            chosen = cur;
        }
    } else {
        if (m_set.size() > opts.subset_enum_cap) {
            out.verdict = Verdict::Unknown;
            out.note = "prefix set too large for subset enumeration";
            out.elapsed_ms = ms_since(start);
            return out;
        }
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m_set.size()); ++mask) {
            std::vector<Prefix> subset;
            for (std::size_t i = 0; i < m_set.size(); ++i) {
                if ((mask >> i) & 1u) subset.push_back(m_set[i]);
            }
            if (eval_hyper_on_prefixes(s.hyper, s.ap, subset)) {
                chosen = subset;
                break;
            }
        }
    }

    if (!chosen) {
        out.verdict = Verdict::Unsat;
        out.elapsed_ms = ms_since(start);
        return out;
    }
    FiniteModel model;
    for (const auto& u2 : *chosen) model.traces.push_back(extend_prefix(aut, adj, u2));
    out.verdict = Verdict::Sat;
    out.finite_model = model;
    out.elapsed_ms = ms_since(start);
    return out;
}

namespace {

std::string zeta_var(std::size_t conj, std::size_t depth, const std::string& prop,
                     const std::string& var) {
    return "c" + std::to_string(conj) + "_x" + std::to_string(depth) + "_" + prop + "@" + var;
}

/// Rewrites one F-argument (X-only) into a propositional formula over the
/// per-conjunct copy variables.
LtlFormula zeta_of_conjunct(const LtlFormula& inner, std::size_t conj) {
    using F = LtlFormula;
    struct Impl {
        std::size_t conj;
        F go(const F& f, std::size_t depth) const {
            switch (f.op()) {
                case LtlOp::Atom: {
                    auto split = split_indexed_atom(f.atom_name());
                    if (!split) throw std::logic_error("zeta: unindexed atom");
                    return F::atom(zeta_var(conj, depth, split->first, split->second));
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
                    throw std::invalid_argument("eventuality argument is not X-only");
            }
        }
    };
    return Impl{conj}.go(inner, 0);
}

struct ZetaShape {
    std::vector<LtlFormula> inners; // X-pushed F-arguments
    std::vector<std::size_t> depths;
};

ZetaShape zeta_shape(const HyperLtlFormula& h) {
    auto split = split_eventuality_conjunction(h.body());
    if (!split || split->propositional_rest) {
        throw std::invalid_argument(
            "decide_eventuality_conjunction: body must be a pure conjunction of eventualities");
    }
    if (!h.is_forall_star_exists_star()) {
        throw std::invalid_argument(
            "decide_eventuality_conjunction: prefix must be forall* exists*");
    }
    ZetaShape shape;
    for (const auto& e : split->eventualities) {
        LtlFormula inner = push_next_to_atoms(e);
        shape.inners.push_back(inner);
        shape.depths.push_back(inner.x_depth());
    }
    return shape;
}

} // namespace

LtlFormula eventuality_zeta(const HyperLtlFormula& h, const AtomSet& ap) {
    ZetaShape shape = zeta_shape(h);
    using F = LtlFormula;
    std::vector<F> parts;
    for (std::size_t c = 0; c < shape.inners.size(); ++c) {
        parts.push_back(zeta_of_conjunct(shape.inners[c], c));
    }
    // Collapse the universal quantifiers: all universal copies agree with the
    // first universal variable, over every copy of every proposition.
    auto universals = h.universal_vars();
    for (std::size_t l = 1; l < universals.size(); ++l) {
        for (std::size_t c = 0; c < shape.inners.size(); ++c) {
            for (std::size_t d = 0; d <= shape.depths[c]; ++d) {
                for (const auto& a : ap.names()) {
                    parts.push_back(F::iff(F::atom(zeta_var(c, d, a, universals[l].id)),
                                           F::atom(zeta_var(c, d, a, universals[0].id))));
                }
            }
        }
    }
    return F::conj_all(parts);
}

SolveOutcome decide_eventuality_conjunction(const HyperLtlFormula& h, const AtomSet& ap) {
    auto start = Clock::now();
    ZetaShape shape = zeta_shape(h);
    SolveOutcome out;
    out.method = "np-eventuality";

    LtlFormula zeta = eventuality_zeta(h, ap);
    auto assignment = sat_assignment(zeta);
    if (!assignment) {
        out.verdict = Verdict::Unsat;
        out.note = "collapsed propositional formula is unsatisfiable";
        out.elapsed_ms = ms_since(start);
        return out;
    }

    // Model per the collapse proof: n+m traces; for every universal tuple and
    // every eventuality, a fresh block of positions realizing the assignment.
    const std::size_t n = h.universal_count();
    const std::size_t m = h.existential_count();
    const std::size_t total = n + m;
    auto universals = h.universal_vars();
    auto existentials = h.existential_vars();

    auto alpha = [&](std::size_t c, std::size_t d, const std::string& prop,
                     const std::string& var) {
        auto it = assignment->find(zeta_var(c, d, prop, var));
        return it != assignment->end() && it->second;
    };

    std::vector<std::map<std::size_t, Letter>> assigned(total);
    auto write_letter = [&](std::size_t trace, std::size_t pos, Letter l) {
        auto it = assigned[trace].find(pos);
        if (it != assigned[trace].end() && it->second != l) {
            throw std::logic_error("eventuality certificate: conflicting assignment");
        }
        assigned[trace][pos] = l;
    };

    std::size_t next_pos = 0;
    std::vector<std::size_t> tuple(n, 0);
    while (true) {
        // Witness indices: the m smallest indices outside the tuple.
        std::vector<std::size_t> witnesses;
        for (std::size_t i = 0; i < total && witnesses.size() < m; ++i) {
            if (std::find(tuple.begin(), tuple.end(), i) == tuple.end()) {
                witnesses.push_back(i);
            }
        }
        for (std::size_t c = 0; c < shape.inners.size(); ++c) {
            const std::size_t width = shape.depths[c] + 1;
            for (std::size_t d = 0; d < width; ++d) {
                // Universal slots share the collapsed assignment.
                for (std::size_t l = 0; l < n; ++l) {
                    Letter letter = 0;
                    for (std::size_t ai = 0; ai < ap.size(); ++ai) {
                        if (alpha(c, d, ap.name(ai), universals[l].id)) letter |= (1u << ai);
                    }
                    write_letter(tuple[l], next_pos + d, letter);
                }
                for (std::size_t l = 0; l < m; ++l) {
                    Letter letter = 0;
                    for (std::size_t ai = 0; ai < ap.size(); ++ai) {
                        if (alpha(c, d, ap.name(ai), existentials[l].id)) letter |= (1u << ai);
                    }
                    write_letter(witnesses[l], next_pos + d, letter);
                }
            }
            next_pos += width;
        }
        if (n == 0) break;
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++tuple[i] < total) break;
            tuple[i] = 0;
        }
        if (i == n) break;
    }

    FiniteModel model;
    for (std::size_t t = 0; t < total; ++t) {
        LassoWord w;
        w.stem.assign(next_pos, 0);
        for (const auto& [pos, l] : assigned[t]) w.stem[pos] = l;
        w.loop = {0};
        model.traces.push_back(canonical_lasso(w));
    }
    if (!eval_hyper_on_model(h, model, ap)) {
        throw std::logic_error("eventuality certificate failed validation");
    }
    out.verdict = Verdict::Sat;
    out.finite_model = model;
    out.elapsed_ms = ms_since(start);
    return out;
}

SolveOutcome decide_eventuality_conjunction_with_prop(const HyperLtlFormula& h,
                                                      const AtomSet& ap) {
    auto start = Clock::now();
    auto split = split_eventuality_conjunction(h.body());
    if (!split) {
        throw std::invalid_argument(
            "decide_eventuality_conjunction_with_prop: body must be F-conjunction plus "
            "propositional remainder");
    }
    SolveOutcome out;
    out.method = "np-eventuality-with-prop";

    std::vector<LtlFormula> fs;
    for (const auto& e : split->eventualities) fs.push_back(LtlFormula::eventually(e));
    HyperLtlFormula f_part(h.prefix(), LtlFormula::conj_all(fs));

    SolveOutcome f_res = decide_eventuality_conjunction(f_part, ap);
    if (f_res.verdict != Verdict::Sat) {
        out.verdict = f_res.verdict;
        out.note = "eventuality part: " + f_res.note;
        out.elapsed_ms = ms_since(start);
        return out;
    }

    if (!split->propositional_rest) {
        f_res.method = out.method;
        return f_res;
    }

    Specification rest_spec;
    rest_spec.ap = ap;
    rest_spec.ltl = LtlFormula::tt();
    rest_spec.hyper = HyperLtlFormula(h.prefix(), *split->propositional_rest);
    SolveOutcome rest_res = decide_x_fragment(rest_spec);
    if (rest_res.verdict != Verdict::Sat) {
        out.verdict = rest_res.verdict;
        out.note = "propositional part: " + rest_res.note;
        out.elapsed_ms = ms_since(start);
        return out;
    }

    // Joint model: n+m disjoint copies of the propositional part's model,
    // with the eventualities realized on fresh later positions per tuple.
    const std::size_t n = h.universal_count();
    const std::size_t m = h.existential_count();
    const std::size_t copies = n + m;
    auto universals = h.universal_vars();
    auto existentials = h.existential_vars();

    const auto& base = rest_res.finite_model->traces;
    const std::size_t kprime = split->propositional_rest->x_depth();
    const std::size_t base_len = kprime + 1;

    // Joint trace (copy, base index) -> flat index.
    const std::size_t big = copies * base.size();
    auto flat = [&](std::size_t copy, std::size_t bi) { return copy * base.size() + bi; };

    std::vector<Prefix> base_prefixes;
    for (const auto& t : base) {
        Prefix p;
        for (std::size_t i = 0; i < base_len; ++i) p.push_back(t.at(i));
        base_prefixes.push_back(p);
    }

    ZetaShape shape = zeta_shape(f_part);
    LtlFormula zeta = eventuality_zeta(f_part, ap);
    auto assignment = sat_assignment(zeta);
    if (!assignment) throw std::logic_error("with-prop: zeta lost satisfiability");
    auto alpha = [&](std::size_t c, std::size_t d, const std::string& prop,
                     const std::string& var) {
        auto it = assignment->find(zeta_var(c, d, prop, var));
        return it != assignment->end() && it->second;
    };

    std::vector<std::map<std::size_t, Letter>> assigned(big);
    auto write_letter = [&](std::size_t trace, std::size_t pos, Letter l) {
        auto it = assigned[trace].find(pos);
        if (it != assigned[trace].end() && it->second != l) {
            throw std::logic_error("with-prop certificate: conflicting assignment");
        }
        assigned[trace][pos] = l;
    };

    // Find propositional witnesses for a tuple of base prefixes.
    auto find_prop_witnesses = [&](const std::vector<std::size_t>& tuple_base)
        -> std::vector<std::size_t> {
        std::vector<std::size_t> pick(m, 0);
        std::map<std::string, const Prefix*> env;
        std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
            if (depth == m) {
                for (std::size_t l = 0; l < n; ++l) {
                    env[universals[l].id] = &base_prefixes[tuple_base[l]];
                }
                for (std::size_t l = 0; l < m; ++l) {
                    env[existentials[l].id] = &base_prefixes[pick[l]];
                }
                return eval_on_prefixes(*split->propositional_rest, ap, env, 0);
            }
            for (std::size_t bi = 0; bi < base.size(); ++bi) {
                pick[depth] = bi;
                if (rec(depth + 1)) return true;
            }
            return false;
        };
        if (!rec(0)) throw std::logic_error("with-prop: no propositional witness");
        return pick;
    };

    std::size_t next_pos = base_len;
    std::vector<std::size_t> tuple(n, 0); // flat joint indices
    while (true) {
        std::vector<std::size_t> tuple_base(n);
        std::set<std::size_t> used_copies;
        for (std::size_t l = 0; l < n; ++l) {
            tuple_base[l] = tuple[l] % base.size();
            used_copies.insert(tuple[l] / base.size());
        }
        std::vector<std::size_t> wit_base = find_prop_witnesses(tuple_base);
        std::vector<std::size_t> wit_copies;
        for (std::size_t c = 0; c < copies && wit_copies.size() < m; ++c) {
            if (!used_copies.count(c)) wit_copies.push_back(c);
        }

        for (std::size_t c = 0; c < shape.inners.size(); ++c) {
            const std::size_t width = shape.depths[c] + 1;
            for (std::size_t d = 0; d < width; ++d) {
                for (std::size_t l = 0; l < n; ++l) {
                    Letter letter = 0;
                    for (std::size_t ai = 0; ai < ap.size(); ++ai) {
                        if (alpha(c, d, ap.name(ai), universals[l].id)) letter |= (1u << ai);
                    }
                    write_letter(tuple[l], next_pos + d, letter);
                }
                for (std::size_t l = 0; l < m; ++l) {
                    Letter letter = 0;
                    for (std::size_t ai = 0; ai < ap.size(); ++ai) {
                        if (alpha(c, d, ap.name(ai), existentials[l].id)) letter |= (1u << ai);
                    }
                    write_letter(flat(wit_copies[l], wit_base[l]), next_pos + d, letter);
                }
            }
            next_pos += width;
        }
        if (n == 0) break;
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++tuple[i] < big) break;
            tuple[i] = 0;
        }
        if (i == n) break;
    }

    FiniteModel model;
    for (std::size_t c = 0; c < copies; ++c) {
        for (std::size_t bi = 0; bi < base.size(); ++bi) {
            LassoWord w;
            w.stem.assign(next_pos, 0);
            for (std::size_t i = 0; i < base_len; ++i) w.stem[i] = base_prefixes[bi][i];
            for (const auto& [pos, l] : assigned[flat(c, bi)]) w.stem[pos] = l;
            w.loop = {0};
            model.traces.push_back(canonical_lasso(w));
        }
    }
    if (!eval_hyper_on_model(h, model, ap)) {
        throw std::logic_error("with-prop certificate failed validation");
    }
    out.verdict = Verdict::Sat;
    out.finite_model = model;
    out.elapsed_ms = ms_since(start);
    return out;
}

} // namespace hypersat
