#include "hypersat/ltl2nba.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hypersat {

namespace {

/// Normalized operator set for the tableau: literals, constants, and, or,
/// X, U, R. Negations sit on atoms only.
LtlFormula normalize_for_translation(const LtlFormula& f) {
    LtlFormula g = to_nnf(f);
    switch (g.op()) {
        case LtlOp::Atom:
        case LtlOp::True:
        case LtlOp::False:
            return g;
        case LtlOp::Not:
            return g; // literal
        case LtlOp::And:
            return LtlFormula::make_and(normalize_for_translation(g.child(0)),
                                        normalize_for_translation(g.child(1)));
        case LtlOp::Or:
            return LtlFormula::make_or(normalize_for_translation(g.child(0)),
                                       normalize_for_translation(g.child(1)));
        case LtlOp::Next:
            return LtlFormula::next(normalize_for_translation(g.child(0)));
        case LtlOp::Until:
            return LtlFormula::until(normalize_for_translation(g.child(0)),
                                     normalize_for_translation(g.child(1)));
        case LtlOp::Release:
            return LtlFormula::release(normalize_for_translation(g.child(0)),
                                       normalize_for_translation(g.child(1)));
        case LtlOp::Eventually:
            return LtlFormula::until(LtlFormula::tt(),
                                     normalize_for_translation(g.child(0)));
        case LtlOp::Globally:
            return LtlFormula::release(LtlFormula::ff(),
                                       normalize_for_translation(g.child(0)));
        case LtlOp::WeakUntil: {
            // a W b = b R (a | b)
            LtlFormula a = normalize_for_translation(g.child(0));
            LtlFormula b = normalize_for_translation(g.child(1));
            return LtlFormula::release(b, LtlFormula::make_or(a, b));
        }
        default:
            throw std::logic_error("normalize: unexpected operator after nnf");
    }
}

/// Formula ordering for canonical sets (precomputed structural keys).
struct FormulaLess {
    bool operator()(const LtlFormula& a, const LtlFormula& b) const {
        return a.key() < b.key();
    }
    static const std::string& key(const LtlFormula& f) { return f.key(); }
};

using FormulaSet = std::set<LtlFormula, FormulaLess>;

struct Branch {
    std::map<std::string, bool> literals; // atom name -> polarity
    FormulaSet nexts;
    FormulaSet fulfilled; // untils whose right branch was taken now
    FormulaSet processed;
};

/// Tableau expansion of a conjunction of formulas into disjunctive branches.
void expand(std::deque<LtlFormula> todo, Branch branch, std::vector<Branch>& out) {
    while (!todo.empty()) {
        LtlFormula f = todo.front();
        todo.pop_front();
        if (branch.processed.count(f)) continue;
        branch.processed.insert(f);
        switch (f.op()) {
            case LtlOp::True:
                break;
            case LtlOp::False:
                return; // dead branch
            case LtlOp::Atom: {
                auto it = branch.literals.find(f.atom_name());
                if (it != branch.literals.end() && !it->second) return;
                branch.literals[f.atom_name()] = true;
                break;
            }
            case LtlOp::Not: {
                const std::string& a = f.child(0).atom_name();
                auto it = branch.literals.find(a);
                if (it != branch.literals.end() && it->second) return;
                branch.literals[a] = false;
                break;
            }
            case LtlOp::And:
                todo.push_front(f.child(1));
                todo.push_front(f.child(0));
                break;
            case LtlOp::Or: {
                std::deque<LtlFormula> left = todo;
                left.push_front(f.child(0));
                expand(std::move(left), branch, out);
                todo.push_front(f.child(1));
                break;
            }
            case LtlOp::Next:
                branch.nexts.insert(f.child(0));
                break;
            case LtlOp::Until: {
                // b | (a & X(a U b))
                std::deque<LtlFormula> now = todo;
                now.push_front(f.child(1));
                Branch fulfilled_branch = branch;
                fulfilled_branch.fulfilled.insert(f);
                expand(std::move(now), std::move(fulfilled_branch), out);
                branch.nexts.insert(f);
                todo.push_front(f.child(0));
                break;
            }
            case LtlOp::Release: {
                // (a & b) | (b & X(a R b))
                std::deque<LtlFormula> stop = todo;
                stop.push_front(f.child(1));
                stop.push_front(f.child(0));
                expand(std::move(stop), branch, out);
                branch.nexts.insert(f);
                todo.push_front(f.child(1));
                break;
            }
            default:
                throw std::logic_error("expand: non-normalized operator");
        }
    }
    out.push_back(std::move(branch));
}

void collect_untils(const LtlFormula& f, FormulaSet& out) {
    if (f.op() == LtlOp::Until) out.insert(f);
    for (std::size_t i = 0; i < f.arity(); ++i) collect_untils(f.child(i), out);
}

std::size_t closure_size(const LtlFormula& f, FormulaSet& seen) {
    seen.insert(f);
    for (std::size_t i = 0; i < f.arity(); ++i) closure_size(f.child(i), seen);
    return seen.size();
}

} // namespace

GeneralizedNba translate_generalized(const LtlFormula& f, const AtomSet& atoms) {
    for (const auto& a : f.atom_names()) {
        if (!atoms.contains(a)) {
            throw std::invalid_argument("translate: atom '" + a + "' not declared");
        }
    }
    LtlFormula norm = normalize_for_translation(f);

    FormulaSet untils;
    collect_untils(norm, untils);
    std::vector<LtlFormula> until_list(untils.begin(), untils.end());

    // State identity: the pending next-obligation set plus the subset of
    // untils fulfilled on the incoming transition.
    struct StateKey {
        std::vector<std::string> obligations;
        std::vector<std::string> fulfilled;
        bool operator<(const StateKey& o) const {
            return std::tie(obligations, fulfilled) < std::tie(o.obligations, o.fulfilled);
        }
    };
    auto key_of = [](const FormulaSet& obls, const FormulaSet& ful) {
        StateKey k;
        for (const auto& g : obls) k.obligations.push_back(FormulaLess::key(g));
        for (const auto& g : ful) k.fulfilled.push_back(FormulaLess::key(g));
        return k;
    };

    GeneralizedNba g;
    g.atoms = atoms;

    std::map<StateKey, std::size_t> ids;
    std::deque<std::pair<FormulaSet, FormulaSet>> work; // (obligations, fulfilled)
    std::vector<std::pair<FormulaSet, FormulaSet>> state_data;

    auto state_id = [&](const FormulaSet& obls, const FormulaSet& ful) {
        StateKey k = key_of(obls, ful);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        if (g.num_states >= 20000) {
            throw ResourceLimitError("translate construction cap", g.num_states + 1, 20000);
        }
        std::size_t id = g.num_states++;
        ids.emplace(std::move(k), id);
        work.emplace_back(obls, ful);
        state_data.emplace_back(obls, ful);
        return id;
    };

    // Pre-initial state: obligation = the whole formula, nothing fulfilled.
    FormulaSet init_obl;
    init_obl.insert(norm);
    std::size_t init = state_id(init_obl, {});
    g.initial = {init};

    auto guard_of = [&](const Branch& b) {
        Prop p = Prop::tt();
        for (const auto& [name, pos] : b.literals) {
            auto idx = atoms.index_of(name);
            p = Prop::conj(p, Prop::lit(*idx, pos));
        }
        return p;
    };

    while (!work.empty()) {
        auto [obls, ful] = work.front();
        work.pop_front();
        std::size_t src = state_id(obls, ful);

        std::vector<Branch> branches;
        std::deque<LtlFormula> todo(obls.begin(), obls.end());
        expand(std::move(todo), Branch{}, branches);
        for (const auto& b : branches) {
            std::size_t dst = state_id(b.nexts, b.fulfilled);
            g.edges.push_back({src, guard_of(b), dst});
        }
        if (g.edges.size() > 300000) {
            throw ResourceLimitError("translate edge cap", g.edges.size(), 300000);
        }
    }

    // One accepting set per until: states whose obligations do not contain it
    // or whose incoming transition fulfilled it.
    for (const auto& u : until_list) {
        std::vector<std::size_t> acc;
        for (std::size_t q = 0; q < g.num_states; ++q) {
            const auto& [obls, ful] = state_data[q];
            if (!obls.count(u) || ful.count(u)) acc.push_back(q);
        }
        g.accepting_sets.push_back(std::move(acc));
    }

    // Size guard per the classical bound.
    FormulaSet cls;
    std::size_t cl = closure_size(norm, cls);
    if (cl < 63) {
        std::size_t bound = (std::size_t{1} << cl) * (until_list.size() + 1) * 2;
        if (g.num_states > bound) {
            throw ResourceLimitError("translate state bound", g.num_states, bound);
        }
    }
    return g;
}

SymbolicNba degeneralize(const GeneralizedNba& g) {
    SymbolicNba out;
    out.atoms = g.atoms;
    const std::size_t k = g.accepting_sets.size();
    if (k == 0) {
        out.num_states = g.num_states;
        out.initial = g.initial;
        for (std::size_t q = 0; q < g.num_states; ++q) out.accepting.push_back(q);
        out.edges = g.edges;
        return out;
    }
    std::vector<std::vector<char>> in_set(k, std::vector<char>(g.num_states, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (auto q : g.accepting_sets[i]) in_set[i][q] = 1;
    }
    auto id = [&](std::size_t q, std::size_t track) { return track * g.num_states + q; };
    out.num_states = g.num_states * k;
    for (auto q : g.initial) out.initial.push_back(id(q, 0));
    for (std::size_t q = 0; q < g.num_states; ++q) {
        if (in_set[0][q]) out.accepting.push_back(id(q, 0));
    }
    for (std::size_t track = 0; track < k; ++track) {
        for (const auto& e : g.edges) {
            std::size_t next_track = in_set[track][e.src] ? (track + 1) % k : track;
            out.edges.push_back({id(e.src, track), e.guard, id(e.dst, next_track)});
        }
    }
    return out;
}

SymbolicNba translate(const LtlFormula& f, const AtomSet& atoms) {
    SymbolicNba a = degeneralize(translate_generalized(f, atoms));
    // Unreachable-state pruning only; full trimming is the caller's call.
    std::vector<char> seen(a.num_states, 0);
    std::deque<std::size_t> work;
    for (auto q : a.initial) {
        seen[q] = 1;
        work.push_back(q);
    }
    auto adj = a.adjacency();
    while (!work.empty()) {
        auto q = work.front();
        work.pop_front();
        for (auto ei : adj[q]) {
            auto d = a.edges[ei].dst;
            if (!seen[d]) {
                seen[d] = 1;
                work.push_back(d);
            }
        }
    }
    std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
    SymbolicNba out;
    out.atoms = a.atoms;
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (seen[q]) remap[q] = out.num_states++;
    }
    for (auto q : a.initial) out.initial.push_back(remap[q]);
    for (auto q : a.accepting) {
        if (remap[q] != SIZE_MAX) out.accepting.push_back(remap[q]);
    }
    for (const auto& e : a.edges) {
        if (remap[e.src] == SIZE_MAX || remap[e.dst] == SIZE_MAX) continue;
        if (!e.guard.satisfiable()) continue;
        out.edges.push_back({remap[e.src], e.guard, remap[e.dst]});
    }
    return out;
}

bool StateLabeledNba::is_accepting(std::size_t q) const {
    return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

StateLabeledNba to_state_labeled(const SymbolicNba& a, std::size_t atom_cap) {
    if (a.atoms.size() > atom_cap) {
        throw ResourceLimitError("state-labeled expansion atom cap", a.atoms.size(), atom_cap);
    }
    const std::size_t letters = a.atoms.letter_count();
    StateLabeledNba out;
    out.atoms = a.atoms;
    out.num_states = a.num_states * letters;
    auto id = [&](std::size_t q, Letter l) { return q * letters + l; };
    out.labels.resize(out.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q) {
        for (Letter l = 0; l < letters; ++l) out.labels[id(q, l)] = l;
    }
    for (auto q : a.initial) {
        for (Letter l = 0; l < letters; ++l) out.initial.push_back(id(q, l));
    }
    for (auto q : a.accepting) {
        for (Letter l = 0; l < letters; ++l) out.accepting.push_back(id(q, l));
    }
    for (const auto& e : a.edges) {
        for (Letter l = 0; l < letters; ++l) {
            if (!e.guard.eval(l)) continue;
            for (Letter l2 = 0; l2 < letters; ++l2) {
                out.edges.push_back({id(e.src, l), id(e.dst, l2)});
            }
        }
    }
    return sl_trim(out);
}

StateLabeledNba sl_trim(const StateLabeledNba& a) {
    std::vector<std::vector<std::size_t>> adj(a.num_states);
    for (std::size_t i = 0; i < a.edges.size(); ++i) adj[a.edges[i].first].push_back(i);

    std::vector<char> reach(a.num_states, 0);
    {
        std::deque<std::size_t> work;
        for (auto q : a.initial) {
            if (!reach[q]) {
                reach[q] = 1;
                work.push_back(q);
            }
        }
        while (!work.empty()) {
            auto q = work.front();
            work.pop_front();
            for (auto ei : adj[q]) {
                auto d = a.edges[ei].second;
                if (!reach[d]) {
                    reach[d] = 1;
                    work.push_back(d);
                }
            }
        }
    }
    // Non-empty states: backward closure from accepting states inside a
    // cycling SCC (Tarjan over the full graph).
    std::vector<char> good(a.num_states, 0);
    {
        std::vector<int> index(a.num_states, -1), low(a.num_states, 0), comp(a.num_states, -1);
        std::vector<char> on_stack(a.num_states, 0);
        std::vector<std::size_t> stack;
        int next_index = 0, next_comp = 0;
        struct Frame {
            std::size_t v;
            std::size_t edge = 0;
        };
        for (std::size_t root = 0; root < a.num_states; ++root) {
            if (index[root] != -1) continue;
            std::vector<Frame> call{{root, 0}};
            while (!call.empty()) {
                Frame& fr = call.back();
                std::size_t v = fr.v;
                if (fr.edge == 0) {
                    index[v] = low[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                }
                bool descended = false;
                while (fr.edge < adj[v].size()) {
                    auto w = a.edges[adj[v][fr.edge++]].second;
                    if (index[w] == -1) {
                        call.push_back({w, 0});
                        descended = true;
                        break;
                    }
                    if (on_stack[w]) low[v] = std::min(low[v], index[w]);
                }
                if (descended) continue;
                if (low[v] == index[v]) {
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = next_comp;
                        if (w == v) break;
                    }
                    ++next_comp;
                }
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
        std::vector<char> scc_edge(static_cast<std::size_t>(next_comp), 0);
        for (const auto& [s, d] : a.edges) {
            if (comp[s] == comp[d]) scc_edge[static_cast<std::size_t>(comp[s])] = 1;
        }
        std::vector<std::vector<std::size_t>> radj(a.num_states);
        for (const auto& [s, d] : a.edges) radj[d].push_back(s);
        std::deque<std::size_t> work;
        for (auto f : a.accepting) {
            if (scc_edge[static_cast<std::size_t>(comp[f])] && !good[f]) {
                good[f] = 1;
                work.push_back(f);
            }
        }
        while (!work.empty()) {
            auto q = work.front();
            work.pop_front();
            for (auto p : radj[q]) {
                if (!good[p]) {
                    good[p] = 1;
                    work.push_back(p);
                }
            }
        }
    }

    std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
    StateLabeledNba out;
    out.atoms = a.atoms;
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (reach[q] && good[q]) {
            remap[q] = out.num_states++;
            out.labels.push_back(a.labels[q]);
        }
    }
    for (auto q : a.initial) {
        if (remap[q] != SIZE_MAX) out.initial.push_back(remap[q]);
    }
    for (auto q : a.accepting) {
        if (remap[q] != SIZE_MAX) out.accepting.push_back(remap[q]);
    }
    for (const auto& [s, d] : a.edges) {
        if (remap[s] != SIZE_MAX && remap[d] != SIZE_MAX) {
            out.edges.push_back({remap[s], remap[d]});
        }
    }
    return out;
}

SymbolicNba sl_to_nba(const StateLabeledNba& a) {
    // Transition-labeled equivalent: an edge into (q', sigma') consumes sigma
    // at the source state; the source's label is the letter being read.
    SymbolicNba out;
    out.atoms = a.atoms;
    out.num_states = a.num_states;
    out.initial = a.initial;
    out.accepting = a.accepting;
    for (const auto& [s, d] : a.edges) {
        out.edges.push_back({s, Prop::exactly(a.labels[s], a.atoms.size()), d});
    }
    return out;
}

} // namespace hypersat
