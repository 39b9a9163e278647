#include "hypersat/nba.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hypersat {

bool SymbolicNba::is_initial(std::size_t q) const {
    return std::find(initial.begin(), initial.end(), q) != initial.end();
}

bool SymbolicNba::is_accepting(std::size_t q) const {
    return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

std::vector<std::vector<std::size_t>> SymbolicNba::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(num_states);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].src].push_back(i);
    }
    return adj;
}

void SymbolicNba::check_valid() const {
    for (auto q : initial) {
        if (q >= num_states) throw std::logic_error("initial state out of range");
    }
    for (auto q : accepting) {
        if (q >= num_states) throw std::logic_error("accepting state out of range");
    }
    for (const auto& e : edges) {
        if (e.src >= num_states || e.dst >= num_states) {
            throw std::logic_error("edge endpoint out of range");
        }
        if (e.guard.support() & ~atoms.full_mask()) {
            throw std::logic_error("guard mentions undeclared atom");
        }
    }
}

SymbolicNba universal_nba(const AtomSet& atoms) {
    SymbolicNba a;
    a.atoms = atoms;
    a.num_states = 1;
    a.initial = {0};
    a.accepting = {0};
    a.edges.push_back({0, Prop::tt(), 0});
    return a;
}

SymbolicNba empty_nba(const AtomSet& atoms) {
    SymbolicNba a;
    a.atoms = atoms;
    return a;
}

SymbolicNba intersect(const SymbolicNba& a, const SymbolicNba& b) {
    if (a.atoms != b.atoms) {
        throw std::invalid_argument("intersect: atom sets differ");
    }
    std::vector<char> fa(a.num_states, 0), fb(b.num_states, 0);
    for (auto q : a.accepting) fa[q] = 1;
    for (auto q : b.accepting) fb[q] = 1;

    auto adj_a = a.adjacency();
    auto adj_b = b.adjacency();

    SymbolicNba out;
    out.atoms = a.atoms;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> ids;
    std::deque<std::tuple<std::size_t, std::size_t, int>> work;

    auto state_id = [&](std::size_t qa, std::size_t qb, int phase) {
        auto key = std::make_tuple(qa, qb, phase);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (out.num_states >= 200000) {
            throw ResourceLimitError("product state cap", out.num_states + 1, 200000);
        }
        std::size_t id = out.num_states++;
        ids[key] = id;
        work.push_back(key);
        // Accepting: watching b (phase 2) at a b-accepting state.
        if (phase == 2 && fb[qb]) out.accepting.push_back(id);
        return id;
    };

    for (auto qa : a.initial) {
        for (auto qb : b.initial) {
            out.initial.push_back(state_id(qa, qb, 1));
        }
    }
    while (!work.empty()) {
        auto [qa, qb, phase] = work.front();
        work.pop_front();
        std::size_t src = ids[{qa, qb, phase}];
        int next_phase = phase == 1 ? (fa[qa] ? 2 : 1) : (fb[qb] ? 1 : 2);
        for (auto ea : adj_a[qa]) {
            for (auto eb : adj_b[qb]) {
                Prop g = Prop::conj(a.edges[ea].guard, b.edges[eb].guard);
                if (!g.satisfiable()) continue;
                std::size_t dst = state_id(a.edges[ea].dst, b.edges[eb].dst, next_phase);
                out.edges.push_back({src, g, dst});
            }
        }
        if (out.edges.size() > 600000) {
            throw ResourceLimitError("product edge cap", out.edges.size(), 600000);
        }
    }
    return out;
}

SymbolicNba project_exists(const SymbolicNba& a, const std::vector<std::string>& keep) {
    std::vector<std::string> kept_names;
    std::vector<std::size_t> kept_old_indices;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        if (std::find(keep.begin(), keep.end(), a.atoms.name(i)) != keep.end()) {
            kept_names.push_back(a.atoms.name(i));
            kept_old_indices.push_back(i);
        }
    }
    for (const auto& k : keep) {
        if (!a.atoms.contains(k)) {
            throw std::invalid_argument("project_exists: atom '" + k + "' not in automaton");
        }
    }
    std::vector<std::size_t> mapping(a.atoms.size(), 0);
    std::vector<char> dropped(a.atoms.size(), 1);
    for (std::size_t ni = 0; ni < kept_old_indices.size(); ++ni) {
        mapping[kept_old_indices[ni]] = ni;
        dropped[kept_old_indices[ni]] = 0;
    }

    SymbolicNba out;
    out.atoms = AtomSet(kept_names);
    out.num_states = a.num_states;
    out.initial = a.initial;
    out.accepting = a.accepting;
    for (const auto& e : a.edges) {
        Prop g = e.guard;
        for (std::size_t i = 0; i < a.atoms.size(); ++i) {
            if (dropped[i]) g = g.exists(i);
        }
        if (!g.satisfiable()) continue;
        out.edges.push_back({e.src, g.rename(mapping), e.dst});
    }
    return out;
}

SymbolicNba relabel(const SymbolicNba& a,
                    const std::vector<std::pair<std::string, std::string>>& rename) {
    std::vector<std::string> new_names;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        const std::string& old = a.atoms.name(i);
        auto it = std::find_if(rename.begin(), rename.end(),
                               [&](const auto& p) { return p.first == old; });
        if (it == rename.end()) {
            throw std::invalid_argument("relabel: no mapping for atom '" + old + "'");
        }
        new_names.push_back(it->second);
    }
    std::set<std::string> distinct(new_names.begin(), new_names.end());
    if (distinct.size() != new_names.size()) {
        throw std::invalid_argument("relabel: mapping is not injective");
    }
    SymbolicNba out = a;
    out.atoms = AtomSet(new_names);
    return out;
}

SymbolicNba extend_atoms(const SymbolicNba& a, const AtomSet& superset) {
    std::vector<std::size_t> mapping;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        auto idx = superset.index_of(a.atoms.name(i));
        if (!idx) {
            throw std::invalid_argument("extend_atoms: atom '" + a.atoms.name(i) +
                                        "' missing from superset");
        }
        mapping.push_back(*idx);
    }
    SymbolicNba out;
    out.atoms = superset;
    out.num_states = a.num_states;
    out.initial = a.initial;
    out.accepting = a.accepting;
    for (const auto& e : a.edges) {
        out.edges.push_back({e.src, e.guard.rename(mapping), e.dst});
    }
    return out;
}

namespace {

struct Graph {
    std::size_t n;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj; // (dst, edge idx)
};

Graph satisfiable_graph(const SymbolicNba& a) {
    Graph g{a.num_states, {}};
    g.adj.resize(a.num_states);
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        if (a.edges[i].guard.satisfiable()) {
            g.adj[a.edges[i].src].push_back({a.edges[i].dst, i});
        }
    }
    return g;
}

std::vector<char> reachable_from(const Graph& g, const std::vector<std::size_t>& starts) {
    std::vector<char> seen(g.n, 0);
    std::deque<std::size_t> work;
    for (auto s : starts) {
        if (!seen[s]) {
            seen[s] = 1;
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        auto q = work.front();
        work.pop_front();
        for (auto [dst, ei] : g.adj[q]) {
            (void)ei;
            if (!seen[dst]) {
                seen[dst] = 1;
                work.push_back(dst);
            }
        }
    }
    return seen;
}

/// Iterative Tarjan SCC over the reachable part.
std::vector<int> scc_of(const Graph& g, const std::vector<char>& alive) {
    std::vector<int> comp(g.n, -1);
    std::vector<int> index(g.n, -1), low(g.n, 0);
    std::vector<char> on_stack(g.n, 0);
    std::vector<std::size_t> stack;
    int next_index = 0;
    int next_comp = 0;

    struct Frame {
        std::size_t v;
        std::size_t edge = 0;
    };
    for (std::size_t root = 0; root < g.n; ++root) {
        if (!alive[root] || index[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root});
        while (!call.empty()) {
            Frame& fr = call.back();
            std::size_t v = fr.v;
            if (fr.edge == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (fr.edge < g.adj[v].size()) {
                auto [w, ei] = g.adj[v][fr.edge++];
                (void)ei;
                if (!alive[w]) continue;
                if (index[w] == -1) {
                    call.push_back({w});
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
            if (!call.empty()) {
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return comp;
}


struct PathFinder {
    const SymbolicNba& a;
    Graph g;
    explicit PathFinder(const SymbolicNba& aut) : a(aut), g(satisfiable_graph(aut)) {}

    /// Shortest edge path from any start to target; empty when target is a start.
    std::optional<std::vector<std::size_t>> path(const std::vector<std::size_t>& starts,
                                                 std::size_t target,
                                                 const std::vector<char>* restrict_to) const {
        std::vector<int> pred(g.n, -1); // incoming edge index
        std::vector<char> seen(g.n, 0);
        std::deque<std::size_t> work;
        for (auto s : starts) {
            if (restrict_to && !(*restrict_to)[s]) continue;
            if (s == target) return std::vector<std::size_t>{};
            if (!seen[s]) {
                seen[s] = 1;
                work.push_back(s);
            }
        }
        while (!work.empty()) {
            auto q = work.front();
            work.pop_front();
            for (auto [dst, ei] : g.adj[q]) {
                if (restrict_to && !(*restrict_to)[dst]) continue;
                if (seen[dst]) continue;
                seen[dst] = 1;
                pred[dst] = static_cast<int>(ei);
                if (dst == target) {
                    std::vector<std::size_t> out;
                    std::size_t cur = dst;
                    while (pred[cur] != -1) {
                        auto e = static_cast<std::size_t>(pred[cur]);
                        out.push_back(e);
                        cur = a.edges[e].src;
                        if (std::find(starts.begin(), starts.end(), cur) != starts.end() &&
                            pred[cur] == -1) {
                            break;
                        }
                    }
                    std::reverse(out.begin(), out.end());
                    return out;
                }
                work.push_back(dst);
            }
        }
        return std::nullopt;
    }

    /// Shortest nonempty cycle through `pivot` (edge indices).
    std::optional<std::vector<std::size_t>> cycle(std::size_t pivot,
                                                  const std::vector<char>* restrict_to) const {
        std::vector<std::size_t> best;
        bool found = false;
        for (auto [mid, ei] : g.adj[pivot]) {
            if (restrict_to && !(*restrict_to)[mid]) continue;
            auto rest = path({mid}, pivot, restrict_to);
            if (!rest) continue;
            std::vector<std::size_t> cand;
            cand.push_back(ei);
            cand.insert(cand.end(), rest->begin(), rest->end());
            if (!found || cand.size() < best.size()) {
                best = cand;
                found = true;
            }
        }
        if (!found) return std::nullopt;
        return best;
    }
};

Letter edge_letter(const SymbolicNba& a, std::size_t ei) {
    auto l = a.edges[ei].guard.satisfying_letter();
    if (!l) throw std::logic_error("unsatisfiable guard on witness path");
    return *l;
}

} // namespace

std::optional<LassoWord> find_accepting_lasso(const SymbolicNba& a) {
    if (a.num_states == 0 || a.initial.empty()) return std::nullopt;
    PathFinder pf(a);
    auto reach = reachable_from(pf.g, a.initial);
    auto comp = scc_of(pf.g, reach);

    // An SCC supports an accepting run iff it contains an accepting state and
    // an internal edge (singleton components need a self-loop).
    std::vector<char> scc_has_edge;
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (comp[q] < 0) continue;
        std::size_t c = static_cast<std::size_t>(comp[q]);
        if (c >= scc_has_edge.size()) scc_has_edge.resize(c + 1, 0);
    }
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (comp[q] < 0) continue;
        for (auto [dst, ei] : pf.g.adj[q]) {
            (void)ei;
            if (comp[dst] == comp[q]) scc_has_edge[comp[q]] = 1;
        }
    }

    for (auto f : a.accepting) {
        if (f >= a.num_states || comp[f] < 0) continue;
        if (!scc_has_edge[comp[f]]) continue;
        std::vector<char> in_scc(a.num_states, 0);
        for (std::size_t q = 0; q < a.num_states; ++q) {
            if (comp[q] == comp[f]) in_scc[q] = 1;
        }
        auto stem_edges = pf.path(a.initial, f, nullptr);
        if (!stem_edges) continue;
        auto loop_edges = pf.cycle(f, &in_scc);
        if (!loop_edges) continue;
        LassoWord w;
        for (auto ei : *stem_edges) w.stem.push_back(edge_letter(a, ei));
        for (auto ei : *loop_edges) w.loop.push_back(edge_letter(a, ei));
        return w;
    }
    return std::nullopt;
}

bool member_lasso(const SymbolicNba& a, const LassoWord& w) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    Letter mask = a.atoms.full_mask();
    for (const auto& l : w.stem) {
        if (l & ~mask) throw std::invalid_argument("lasso letter outside automaton alphabet");
    }
    for (const auto& l : w.loop) {
        if (l & ~mask) throw std::invalid_argument("lasso letter outside automaton alphabet");
    }
    SymbolicNba lassoAut;
    lassoAut.atoms = a.atoms;
    const std::size_t n = w.length();
    lassoAut.num_states = n;
    lassoAut.initial = {0};
    for (std::size_t i = 0; i < n; ++i) {
        lassoAut.accepting.push_back(i);
        std::size_t nxt = i + 1 < n ? i + 1 : w.stem.size();
        lassoAut.edges.push_back({i, Prop::exactly(w.at(i), a.atoms.size()), nxt});
    }
    return find_accepting_lasso(intersect(a, lassoAut)).has_value();
}

SymbolicNba trim(const SymbolicNba& a) {
    if (a.num_states == 0) return a;
    PathFinder pf(a);
    auto reach = reachable_from(pf.g, a.initial);
    auto comp = scc_of(pf.g, reach);

    std::vector<char> scc_has_edge;
    std::size_t max_comp = 0;
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (comp[q] >= 0) max_comp = std::max(max_comp, static_cast<std::size_t>(comp[q]) + 1);
    }
    scc_has_edge.assign(max_comp, 0);
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (comp[q] < 0) continue;
        for (auto [dst, ei] : pf.g.adj[q]) {
            (void)ei;
            if (comp[dst] == comp[q]) scc_has_edge[comp[q]] = 1;
        }
    }
    // Good states: can reach an accepting state inside a cycling SCC.
    std::vector<char> good(a.num_states, 0);
    std::deque<std::size_t> work;
    for (auto f : a.accepting) {
        if (f < a.num_states && comp[f] >= 0 && scc_has_edge[comp[f]]) {
            if (!good[f]) {
                good[f] = 1;
                work.push_back(f);
            }
        }
    }
    std::vector<std::vector<std::size_t>> radj(a.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q) {
        for (auto [dst, ei] : pf.g.adj[q]) {
            (void)ei;
            radj[dst].push_back(q);
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

    std::vector<std::size_t> remap(a.num_states, SIZE_MAX);
    SymbolicNba out;
    out.atoms = a.atoms;
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (reach[q] && good[q]) remap[q] = out.num_states++;
    }
    for (auto q : a.initial) {
        if (remap[q] != SIZE_MAX) out.initial.push_back(remap[q]);
    }
    for (auto q : a.accepting) {
        if (remap[q] != SIZE_MAX) out.accepting.push_back(remap[q]);
    }
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (remap[q] == SIZE_MAX) continue;
        for (auto [dst, ei] : pf.g.adj[q]) {
            if (remap[dst] == SIZE_MAX) continue;
            out.edges.push_back({remap[q], a.edges[ei].guard, remap[dst]});
        }
    }
    return out;
}

SymbolicNba quotient_bisim(const SymbolicNba& a, std::size_t atom_cap) {
    if (a.num_states == 0) return a;
    if (a.atoms.size() > atom_cap) return a;
    const std::size_t letters = a.atoms.letter_count();
    auto adj = a.adjacency();

    // Per-state, per-letter successor lists, computed once.
    std::vector<std::vector<std::vector<std::size_t>>> succ(
        a.num_states, std::vector<std::vector<std::size_t>>(letters));
    for (const auto& e : a.edges) {
        for (Letter l = 0; l < letters; ++l) {
            if (e.guard.eval(l)) succ[e.src][l].push_back(e.dst);
        }
    }

    std::vector<int> cls(a.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q) cls[q] = a.is_accepting(q) ? 1 : 0;

    // Signature: class, then per letter the sorted successor-class list,
    // flattened with -1 separators.
    std::vector<int> sig;
    for (std::size_t round = 0; round < 64; ++round) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> next_cls(a.num_states);
        for (std::size_t q = 0; q < a.num_states; ++q) {
            sig.clear();
            sig.push_back(cls[q]);
            for (Letter l = 0; l < letters; ++l) {
                sig.push_back(-1);
                std::vector<int> cs;
                cs.reserve(succ[q][l].size());
                for (auto d : succ[q][l]) cs.push_back(cls[d]);
                std::sort(cs.begin(), cs.end());
                cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
                sig.insert(sig.end(), cs.begin(), cs.end());
            }
            auto it = sig_ids.find(sig);
            if (it == sig_ids.end()) {
                it = sig_ids.emplace(sig, static_cast<int>(sig_ids.size())).first;
            }
            next_cls[q] = it->second;
        }
        std::set<int> old_ids(cls.begin(), cls.end());
        bool stable = sig_ids.size() == old_ids.size();
        cls = std::move(next_cls);
        if (stable) break;
        // Partitions must reach a fixpoint for the quotient to be a
        // bisimulation; give up (identity) if refinement is still moving.
        if (round + 1 == 64) return a;
    }

    int num_classes = *std::max_element(cls.begin(), cls.end()) + 1;
    SymbolicNba out;
    out.atoms = a.atoms;
    out.num_states = static_cast<std::size_t>(num_classes);
    std::vector<int> rep(num_classes, -1);
    for (std::size_t q = 0; q < a.num_states; ++q) {
        if (rep[cls[q]] < 0) rep[cls[q]] = static_cast<int>(q);
    }
    std::set<int> init_classes, acc_classes;
    for (auto q : a.initial) init_classes.insert(cls[q]);
    for (auto q : a.accepting) acc_classes.insert(cls[q]);
    for (auto c : init_classes) out.initial.push_back(static_cast<std::size_t>(c));
    for (auto c : acc_classes) out.accepting.push_back(static_cast<std::size_t>(c));
    for (int c = 0; c < num_classes; ++c) {
        std::map<int, Prop> guard_to;
        auto q = static_cast<std::size_t>(rep[c]);
        for (auto ei : adj[q]) {
            const auto& e = a.edges[ei];
            auto it = guard_to.find(cls[e.dst]);
            if (it == guard_to.end()) {
                guard_to.emplace(cls[e.dst], e.guard);
            } else {
                it->second = Prop::disj(it->second, e.guard);
            }
        }
        for (auto& [dc, g] : guard_to) {
            if (!g.satisfiable()) continue;
            out.edges.push_back({static_cast<std::size_t>(c), g, static_cast<std::size_t>(dc)});
        }
    }
    return out;
}

SymbolicNba reduce(const SymbolicNba& a) {
    SymbolicNba t = trim(a);
    // Partition refinement must run to fixpoint to stay sound; skip it
    // entirely when the automaton is too large for that to be worthwhile.
    if (t.num_states > 1000) return t;
    return quotient_bisim(t);
}

SafetyAutomaton safety_closure(const SymbolicNba& a) {
    SymbolicNba t = trim(a);
    SafetyAutomaton sa;
    sa.atoms = t.atoms;
    if (t.num_states == 0 || t.initial.empty()) {
        return sa; // empty safety automaton: no states
    }
    if (t.initial.size() == 1) {
        sa.num_states = t.num_states;
        sa.initial = t.initial[0];
        for (const auto& e : t.edges) sa.edges.push_back({e.src, e.guard, e.dst});
        return sa;
    }
    // Synthesize a single initial state carrying the union of initial out-edges.
    sa.num_states = t.num_states + 1;
    std::size_t q0 = t.num_states;
    sa.initial = q0;
    for (const auto& e : t.edges) sa.edges.push_back({e.src, e.guard, e.dst});
    for (auto i : t.initial) {
        for (const auto& e : t.edges) {
            if (e.src == i) sa.edges.push_back({q0, e.guard, e.dst});
        }
    }
    return sa;
}

SymbolicNba safety_to_nba(const SafetyAutomaton& sa) {
    SymbolicNba out;
    out.atoms = sa.atoms;
    out.num_states = sa.num_states;
    if (sa.initial) out.initial = {*sa.initial};
    for (std::size_t q = 0; q < sa.num_states; ++q) out.accepting.push_back(q);
    for (const auto& e : sa.edges) out.edges.push_back({e.src, e.guard, e.dst});
    return out;
}

SymbolicNba closure_nba(const SymbolicNba& a) { return safety_to_nba(safety_closure(a)); }

bool is_safety_language(const SymbolicNba& a, const ComplementOptions& opts) {
    return contains(a, closure_nba(a), opts).holds;
}

bool is_liveness_language(const SymbolicNba& a, const ComplementOptions& opts) {
    return is_empty(complement(closure_nba(a), opts));
}

bool is_structurally_universal(const SymbolicNba& a) {
    if (a.num_states == 0 || a.initial.empty()) return false;
    auto tautology = [](const Prop& g) { return !Prop::negate(g).satisfiable(); };
    // Subgraph of tautology-guarded edges.
    std::vector<std::vector<std::size_t>> adj(a.num_states);
    for (const auto& e : a.edges) {
        if (tautology(e.guard)) adj[e.src].push_back(e.dst);
    }
    std::vector<char> reach(a.num_states, 0);
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
        for (auto d : adj[q]) {
            if (!reach[d]) {
                reach[d] = 1;
                work.push_back(d);
            }
        }
    }
    // An accepting state on a tautology cycle, reachable by tautology edges.
    for (auto f : a.accepting) {
        if (f >= a.num_states || !reach[f]) continue;
        std::vector<char> seen(a.num_states, 0);
        std::deque<std::size_t> bfs;
        for (auto d : adj[f]) {
            if (d == f) return true;
            if (!seen[d]) {
                seen[d] = 1;
                bfs.push_back(d);
            }
        }
        while (!bfs.empty()) {
            auto q = bfs.front();
            bfs.pop_front();
            for (auto d : adj[q]) {
                if (d == f) return true;
                if (!seen[d]) {
                    seen[d] = 1;
                    bfs.push_back(d);
                }
            }
        }
    }
    return false;
}

ContainsResult contains(const SymbolicNba& big, const SymbolicNba& small,
                        const ComplementOptions& opts) {
    if (big.atoms != small.atoms) {
        throw std::invalid_argument("contains: atom sets differ");
    }
    ContainsResult r;
    if (is_empty(small) ||
        (big.num_states <= 2000 && is_structurally_universal(reduce(big)))) {
        r.holds = true;
        return r;
    }
    SymbolicNba comp = complement(big, opts);
    auto witness = find_accepting_lasso(intersect(small, comp));
    r.holds = !witness.has_value();
    r.counterexample = witness;
    return r;
}

} // namespace hypersat
