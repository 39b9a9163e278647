#include "hypersat/eval.hpp"

#include <numeric>
#include <stdexcept>

namespace hypersat {

namespace {

using Values = std::vector<char>;

struct LassoEval {
    const LassoWord& w;
    const AtomSet& ap;
    std::size_t n; // stem + loop positions

    std::size_t succ(std::size_t i) const {
        return i + 1 < n ? i + 1 : w.stem.size();
    }

    Values eval(const LtlFormula& f) const {
        switch (f.op()) {
            case LtlOp::Atom: {
                auto idx = ap.index_of(f.atom_name());
                if (!idx) {
                    throw std::invalid_argument("lasso evaluation: atom '" + f.atom_name() +
                                                "' not in alphabet");
                }
                Values v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = letter_has(w.at(i), *idx);
                return v;
            }
            case LtlOp::True: return Values(n, 1);
            case LtlOp::False: return Values(n, 0);
            case LtlOp::Not: {
                Values a = eval(f.child(0));
                for (auto& x : a) x = !x;
                return a;
            }
            case LtlOp::And: {
                Values a = eval(f.child(0)), b = eval(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
                return a;
            }
            case LtlOp::Or: {
                Values a = eval(f.child(0)), b = eval(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = a[i] || b[i];
                return a;
            }
            case LtlOp::Implies: {
                Values a = eval(f.child(0)), b = eval(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = !a[i] || b[i];
                return a;
            }
            case LtlOp::Iff: {
                Values a = eval(f.child(0)), b = eval(f.child(1));
                for (std::size_t i = 0; i < n; ++i) a[i] = a[i] == b[i];
                return a;
            }
            case LtlOp::Next: {
                Values a = eval(f.child(0));
                Values v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = a[succ(i)];
                return v;
            }
            case LtlOp::Until:
                return until(eval(f.child(0)), eval(f.child(1)));
            case LtlOp::Release:
                return release(eval(f.child(0)), eval(f.child(1)));
            case LtlOp::Eventually:
                return until(Values(n, 1), eval(f.child(0)));
            case LtlOp::Globally:
                return release(Values(n, 0), eval(f.child(0)));
            case LtlOp::WeakUntil: {
                // a W b = b R (a | b)
                Values a = eval(f.child(0)), b = eval(f.child(1));
                Values ab(n);
                for (std::size_t i = 0; i < n; ++i) ab[i] = a[i] || b[i];
                return release(b, ab);
            }
        }
        throw std::logic_error("unreachable");
    }

    // Least fixpoint of v[i] = b[i] | (a[i] & v[succ(i)]) on the loop,
    // then one backward pass over the stem.
    Values until(const Values& a, const Values& b) const {
        Values v(n, 0);
        const std::size_t s = w.stem.size();
        for (std::size_t sweep = 0; sweep <= w.loop.size(); ++sweep) {
            for (std::size_t i = n; i-- > s;) {
                v[i] = b[i] || (a[i] && v[succ(i)]);
            }
        }
        for (std::size_t i = s; i-- > 0;) {
            v[i] = b[i] || (a[i] && v[i + 1]);
        }
        return v;
    }

    // Greatest fixpoint of v[i] = b[i] & (a[i] | v[succ(i)]).
    Values release(const Values& a, const Values& b) const {
        Values v(n, 1);
        const std::size_t s = w.stem.size();
        for (std::size_t sweep = 0; sweep <= w.loop.size(); ++sweep) {
            for (std::size_t i = n; i-- > s;) {
                v[i] = b[i] && (a[i] || v[succ(i)]);
            }
        }
        for (std::size_t i = s; i-- > 0;) {
            v[i] = b[i] && (a[i] || v[i + 1]);
        }
        return v;
    }
};

} // namespace

bool eval_ltl_on_lasso(const LtlFormula& f, const LassoWord& w, const AtomSet& ap) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    Letter mask = ap.full_mask();
    for (const auto& l : w.stem) {
        if (l & ~mask) throw std::invalid_argument("lasso letter outside alphabet");
    }
    for (const auto& l : w.loop) {
        if (l & ~mask) throw std::invalid_argument("lasso letter outside alphabet");
    }
    LassoEval ev{w, ap, w.length()};
    return ev.eval(f)[0] != 0;
}

AtomSet indexed_atom_set(const AtomSet& ap, const std::vector<TraceVar>& vars) {
    std::vector<std::string> names;
    for (const auto& v : vars) {
        for (const auto& a : ap.names()) {
            names.push_back(indexed_atom(a, v.id));
        }
    }
    return AtomSet(names);
}

LassoWord zip_traces(const std::vector<LassoWord>& traces, std::size_t ap_size) {
    if (traces.empty()) throw std::invalid_argument("zip of zero traces");
    std::size_t stem_len = 0;
    std::size_t loop_len = 1;
    for (const auto& t : traces) {
        stem_len = std::max(stem_len, t.stem.size());
        loop_len = std::lcm(loop_len, t.loop.size());
    }
    LassoWord out;
    auto combined = [&](std::size_t pos) {
        Letter l = 0;
        for (std::size_t k = 0; k < traces.size(); ++k) {
            Letter tl = traces[k].at(pos);
            l |= (tl << (k * ap_size));
        }
        return l;
    };
    for (std::size_t i = 0; i < stem_len; ++i) out.stem.push_back(combined(i));
    for (std::size_t i = 0; i < loop_len; ++i) out.loop.push_back(combined(stem_len + i));
    return out;
}

namespace {

bool eval_hyper_rec(const HyperLtlFormula& h, const FiniteModel& m, const AtomSet& ap,
                    std::size_t depth, std::vector<std::size_t>& choice) {
    if (depth == h.prefix().size()) {
        std::vector<LassoWord> assigned;
        assigned.reserve(choice.size());
        for (auto idx : choice) assigned.push_back(m.traces[idx]);
        LassoWord zipped = zip_traces(assigned, ap.size());
        std::vector<TraceVar> vars;
        for (const auto& [q, v] : h.prefix()) {
            (void)q;
            vars.push_back(v);
        }
        return eval_ltl_on_lasso(h.body(), zipped, indexed_atom_set(ap, vars));
    }
    const bool universal = h.prefix()[depth].first == Quant::Forall;
    for (std::size_t i = 0; i < m.traces.size(); ++i) {
        choice.push_back(i);
        bool sub = eval_hyper_rec(h, m, ap, depth + 1, choice);
        choice.pop_back();
        if (universal && !sub) return false;
        if (!universal && sub) return true;
    }
    return universal;
}

} // namespace

bool eval_hyper_on_model(const HyperLtlFormula& h, const FiniteModel& m, const AtomSet& ap) {
    if (m.traces.empty()) throw std::invalid_argument("model must be nonempty");
    std::vector<std::size_t> choice;
    return eval_hyper_rec(h, m, ap, 0, choice);
}

} // namespace hypersat
