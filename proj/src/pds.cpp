#include "hypersat/pds.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "hypersat/eval.hpp"
#include "hypersat/transforms.hpp"

namespace hypersat {

namespace {

const char* tag_name(BuchiPushdownSystem::Tag t) {
    switch (t) {
        case BuchiPushdownSystem::Tag::F: return "F";
        case BuchiPushdownSystem::Tag::B: return "B";
        case BuchiPushdownSystem::Tag::W: return "W";
    }
    return "?";
}

/// Evaluates a propositional body over the pair (current label, witness label).
bool joint_letter_satisfies(const LtlFormula& body, const AtomSet& ap, const TraceVar& uvar,
                            const TraceVar& evar, Letter current, Letter witness) {
    switch (body.op()) {
        case LtlOp::Atom: {
            auto split = split_indexed_atom(body.atom_name());
            if (!split) throw std::logic_error("pds body: unindexed atom");
            auto idx = ap.index_of(split->first);
            if (!idx) throw std::logic_error("pds body: unknown proposition " + split->first);
            if (split->second == uvar.id) return letter_has(current, *idx);
            if (split->second == evar.id) return letter_has(witness, *idx);
            throw std::logic_error("pds body: unexpected trace variable " + split->second);
        }
        case LtlOp::True: return true;
        case LtlOp::False: return false;
        case LtlOp::Not:
            return !joint_letter_satisfies(body.child(0), ap, uvar, evar, current, witness);
        case LtlOp::And:
            return joint_letter_satisfies(body.child(0), ap, uvar, evar, current, witness) &&
                   joint_letter_satisfies(body.child(1), ap, uvar, evar, current, witness);
        case LtlOp::Or:
            return joint_letter_satisfies(body.child(0), ap, uvar, evar, current, witness) ||
                   joint_letter_satisfies(body.child(1), ap, uvar, evar, current, witness);
        case LtlOp::Implies:
            return !joint_letter_satisfies(body.child(0), ap, uvar, evar, current, witness) ||
                   joint_letter_satisfies(body.child(1), ap, uvar, evar, current, witness);
        case LtlOp::Iff:
            return joint_letter_satisfies(body.child(0), ap, uvar, evar, current, witness) ==
                   joint_letter_satisfies(body.child(1), ap, uvar, evar, current, witness);
        default:
            throw std::invalid_argument("pds body must be propositional");
    }
}

} // namespace

std::string BuchiPushdownSystem::rules_to_string() const {
    std::ostringstream out;
    auto sym = [&](std::size_t i) {
        return i < stack_symbol_names.size() ? stack_symbol_names[i] : std::to_string(i);
    };
    auto st = [&](std::size_t i) {
        return i < state_names.size() ? state_names[i] : std::to_string(i);
    };
    for (const auto& r : rules) {
        out << st(r.src) << " [";
        for (std::size_t i = 0; i < r.pop.size(); ++i) {
            if (i) out << ",";
            out << sym(r.pop[i]);
        }
        out << "] -> " << st(r.dst) << " [";
        for (std::size_t i = 0; i < r.push.size(); ++i) {
            if (i) out << ",";
            out << sym(r.push[i]);
        }
        out << "] " << tag_name(r.tag) << "\n";
    }
    return out.str();
}

BuchiPushdownSystem build_pds(const StateLabeledNba& trace_aut, const LtlFormula& body,
                              const TraceVar& uvar, const TraceVar& evar, const AtomSet& ap) {
    const std::size_t n = trace_aut.num_states;

    // Successor sets of the trace automaton.
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::vector<std::size_t>> pred(n);
    for (const auto& [s, d] : trace_aut.edges) {
        succ[s].push_back(d);
        pred[d].push_back(s);
    }

    // Post iteration from the initial states; only reachable sets become
    // stack symbols. The sequence is ultimately periodic.
    using StateSet = std::vector<std::size_t>; // sorted
    auto post_of = [&](const StateSet& x) {
        std::set<std::size_t> out;
        for (auto q : x) {
            for (auto d : succ[q]) out.insert(d);
        }
        return StateSet(out.begin(), out.end());
    };

    std::map<StateSet, std::size_t> symbol_of;
    std::vector<StateSet> symbols;
    std::vector<std::size_t> post_seq;

    StateSet cur(trace_aut.initial.begin(), trace_aut.initial.end());
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    std::size_t cycle_start = 0;
    while (true) {
        auto it = symbol_of.find(cur);
        if (it != symbol_of.end()) {
            // The sequence entered its cycle at the position of this symbol.
            cycle_start = static_cast<std::size_t>(
                std::find(post_seq.begin(), post_seq.end(), it->second) - post_seq.begin());
            break;
        }
        std::size_t id = symbols.size();
        symbol_of.emplace(cur, id);
        symbols.push_back(cur);
        post_seq.push_back(id);
        cur = post_of(cur);
    }

    BuchiPushdownSystem p;
    p.post_cycle_start = cycle_start;
    p.num_stack_symbols = symbols.size();
    for (const auto& s : symbols) {
        std::string nm = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) nm += ",";
            nm += std::to_string(s[i]);
        }
        nm += "}";
        p.stack_symbol_names.push_back(nm);
    }
    p.post_sequence = post_seq;
    p.initial_stack_symbol = post_seq.empty() ? 0 : post_seq[0];

    // States (q, direction); forward = 0, backward = 1.
    p.num_states = 2 * n;
    auto sid = [&](std::size_t q, bool backward) { return q * 2 + (backward ? 1 : 0); };
    for (std::size_t q = 0; q < n; ++q) {
        p.state_names.push_back("(" + std::to_string(q) + ",fwd)");
        p.state_names.push_back("(" + std::to_string(q) + ",bwd)");
    }
    p.intermediate_state.assign(p.num_states, 0);
    for (auto q0 : trace_aut.initial) p.initial_states.push_back(sid(q0, false));

    auto post_index_of = [&](std::size_t sym) {
        // successor symbol in the Post sequence
        auto it = std::find(post_seq.begin(), post_seq.end(), sym);
        if (it == post_seq.end()) throw std::logic_error("pds: unknown stack symbol");
        std::size_t pos = static_cast<std::size_t>(it - post_seq.begin());
        if (pos + 1 < post_seq.size()) return post_seq[pos + 1];
        // wrap into the cycle: Post of the last element
        StateSet nxt = post_of(symbols[sym]);
        auto jt = symbol_of.find(nxt);
        if (jt == symbol_of.end()) throw std::logic_error("pds: post left the symbol set");
        return jt->second;
    };

    // (F) forward steps: push the next Post set.
    for (std::size_t sym = 0; sym < symbols.size(); ++sym) {
        std::size_t next_sym = post_index_of(sym);
        for (std::size_t q = 0; q < n; ++q) {
            for (auto d : succ[q]) {
                p.rules.push_back({sid(q, false),
                                   {sym},
                                   sid(d, false),
                                   {next_sym, sym},
                                   BuchiPushdownSystem::Tag::F});
            }
        }
    }

    // (B) backward steps: pop two symbols, the new top constrains the target.
    for (std::size_t sym1 = 0; sym1 < symbols.size(); ++sym1) {
        for (std::size_t sym2 = 0; sym2 < symbols.size(); ++sym2) {
            for (std::size_t q = 0; q < n; ++q) {
                for (auto q2 : pred[q]) {
                    if (!std::binary_search(symbols[sym2].begin(), symbols[sym2].end(), q2)) {
                        continue;
                    }
                    p.rules.push_back({sid(q, true),
                                       {sym1, sym2},
                                       sid(q2, true),
                                       {sym2},
                                       BuchiPushdownSystem::Tag::B});
                }
            }
        }
    }

    // (W) witness steps: jump to any state of the current Post set whose
    // label, joined with the current label, satisfies the body.
    for (std::size_t sym = 0; sym < symbols.size(); ++sym) {
        for (std::size_t q = 0; q < n; ++q) {
            for (auto q2 : symbols[sym]) {
                if (!joint_letter_satisfies(body, ap, uvar, evar, trace_aut.labels[q],
                                            trace_aut.labels[q2])) {
                    continue;
                }
                for (bool b1 : {false, true}) {
                    for (bool b2 : {false, true}) {
                        p.rules.push_back({sid(q, b1),
                                           {sym},
                                           sid(q2, b2),
                                           {sym},
                                           BuchiPushdownSystem::Tag::W});
                    }
                }
            }
        }
    }
    return p;
}

BuchiPushdownSystem normalize_rules(const BuchiPushdownSystem& p) {
    BuchiPushdownSystem out = p;
    out.rules.clear();
    // One intermediate per (source state, first popped symbol).
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mids;
    auto mid_of = [&](std::size_t src, std::size_t sym) {
        auto key = std::make_pair(src, sym);
        auto it = mids.find(key);
        if (it != mids.end()) return it->second;
        std::size_t id = out.num_states++;
        out.state_names.push_back("mid(" + (src < p.state_names.size()
                                                ? p.state_names[src]
                                                : std::to_string(src)) +
                                  "," + std::to_string(sym) + ")");
        out.intermediate_state.push_back(1);
        mids.emplace(key, id);
        return id;
    };

    for (const auto& r : p.rules) {
        if (r.pop.size() == 1) {
            out.rules.push_back(r);
        } else if (r.pop.size() == 2) {
            std::size_t mid = mid_of(r.src, r.pop[0]);
            // First half pops the top symbol and carries the tag.
            out.rules.push_back({r.src, {r.pop[0]}, mid, {}, r.tag});
            // Second half inspects the symbol below and performs the push.
            out.rules.push_back({mid, {r.pop[1]}, r.dst, r.push,
                                 BuchiPushdownSystem::Tag::B});
        } else {
            throw std::invalid_argument("normalize_rules: pop length > 2");
        }
    }
    return out;
}

BuchiPushdownSystem to_state_based_acceptance(const BuchiPushdownSystem& p) {
    BuchiPushdownSystem out = p;
    // Flagged copy of each W-rule target: the copy is accepting and has the
    // same outgoing rules as the original (merging back silently). The set of
    // states needing copies is exactly the W-rule targets, which is fixed.
    std::map<std::size_t, std::size_t> flagged;
    for (const auto& r : p.rules) {
        if (r.tag != BuchiPushdownSystem::Tag::W || flagged.count(r.dst)) continue;
        std::size_t id = out.num_states++;
        out.state_names.push_back((r.dst < p.state_names.size() ? p.state_names[r.dst]
                                                                : std::to_string(r.dst)) +
                                  "*");
        out.intermediate_state.push_back(
            r.dst < p.intermediate_state.size() ? p.intermediate_state[r.dst] : 0);
        out.accepting_states.push_back(id);
        flagged.emplace(r.dst, id);
    }
    auto redirect = [&](std::size_t q) {
        auto it = flagged.find(q);
        return it == flagged.end() ? q : it->second;
    };
    for (auto& r : out.rules) {
        if (r.tag == BuchiPushdownSystem::Tag::W) r.dst = redirect(r.dst);
    }
    std::vector<BuchiPushdownSystem::Rule> extra;
    for (const auto& [orig, copy] : flagged) {
        for (const auto& r : p.rules) {
            if (r.src != orig) continue;
            auto r2 = r;
            r2.src = copy;
            if (r2.tag == BuchiPushdownSystem::Tag::W) r2.dst = redirect(r2.dst);
            extra.push_back(r2);
        }
    }
    out.rules.insert(out.rules.end(), extra.begin(), extra.end());
    return out;
}

namespace {

struct FactKey {
    std::size_t p, gamma, q;
    bool flag;
    bool operator<(const FactKey& o) const {
        return std::tie(p, gamma, q, flag) < std::tie(o.p, o.gamma, o.q, o.flag);
    }
};

struct PopDeriv {
    std::size_t rule;
    std::optional<FactKey> f1, f2;
};

struct HeadEdge {
    std::size_t dst_head;
    bool flag;
    std::size_t rule;
    std::optional<FactKey> via_pop; // for push-2 composed edges
};

} // namespace

std::optional<PdsRunLasso> pds_accepting_run(const BuchiPushdownSystem& p) {
    for (const auto& r : p.rules) {
        if (r.pop.size() != 1) {
            throw std::invalid_argument("pds_accepting_run: rules must be pop-1 normalized");
        }
        if (r.push.size() > 2) {
            throw std::invalid_argument("pds_accepting_run: push length > 2 unsupported");
        }
    }
    const std::size_t S = p.num_stack_symbols;
    auto head_id = [&](std::size_t state, std::size_t sym) { return state * S + sym; };

    // --- Pop saturation: (p, gamma) =>* (q, eps), with acceptance flag.
    std::map<FactKey, PopDeriv> derivs;

    auto add_fact = [&](const FactKey& k, const PopDeriv& d) {
        if (derivs.count(k)) return;
        derivs.emplace(k, d);
    };

    // Index rules by source state for the saturation loop.
    std::vector<std::vector<std::size_t>> rules_by_src(p.num_states);
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        rules_by_src[p.rules[i].src].push_back(i);
    }

    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const auto& r = p.rules[i];
        if (r.push.empty()) {
            add_fact({r.src, r.pop[0], r.dst, r.tag == BuchiPushdownSystem::Tag::W},
                     PopDeriv{i, std::nullopt, std::nullopt});
        }
    }

    auto facts_from = [&](std::size_t state, std::size_t sym) {
        std::vector<FactKey> out;
        for (bool fl : {false, true}) {
            for (std::size_t q = 0; q < p.num_states; ++q) {
                FactKey k{state, sym, q, fl};
                if (derivs.count(k)) out.push_back(k);
            }
        }
        return out;
    };

    // Saturate to fixpoint: process both directions (new fact enables rules
    // whose push refers to it). A simple semi-naive loop suffices here.
    bool changed = true;
    while (changed) {
        changed = false;
        std::size_t before = derivs.size();
        for (std::size_t i = 0; i < p.rules.size(); ++i) {
            const auto& r = p.rules[i];
            bool racc = r.tag == BuchiPushdownSystem::Tag::W;
            if (r.push.size() == 1) {
                for (const auto& f : facts_from(r.dst, r.push[0])) {
                    add_fact({r.src, r.pop[0], f.q, racc || f.flag}, PopDeriv{i, f, std::nullopt});
                }
            } else if (r.push.size() == 2) {
                for (const auto& f1 : facts_from(r.dst, r.push[0])) {
                    for (const auto& f2 : facts_from(f1.q, r.push[1])) {
                        add_fact({r.src, r.pop[0], f2.q, racc || f1.flag || f2.flag},
                                 PopDeriv{i, f1, f2});
                    }
                }
            }
        }
        if (derivs.size() != before) changed = true;
    }

    // --- Head graph.
    const std::size_t H = p.num_states * S;
    std::vector<std::vector<HeadEdge>> hedges(H);
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const auto& r = p.rules[i];
        bool racc = r.tag == BuchiPushdownSystem::Tag::W;
        std::size_t src = head_id(r.src, r.pop[0]);
        if (r.push.size() >= 1) {
            hedges[src].push_back({head_id(r.dst, r.push[0]), racc, i, std::nullopt});
        }
        if (r.push.size() == 2) {
            for (const auto& f : facts_from(r.dst, r.push[0])) {
                hedges[src].push_back({head_id(f.q, r.push[1]), racc || f.flag, i, f});
            }
        }
    }

    // --- SCCs of the head graph (iterative Tarjan).
    std::vector<int> comp(H, -1);
    {
        std::vector<int> index(H, -1), low(H, 0);
        std::vector<char> on_stack(H, 0);
        std::vector<std::size_t> stack;
        int next_index = 0, next_comp = 0;
        struct Frame {
            std::size_t v;
            std::size_t edge = 0;
        };
        for (std::size_t root = 0; root < H; ++root) {
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
                while (fr.edge < hedges[v].size()) {
                    std::size_t w = hedges[v][fr.edge++].dst_head;
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
    }

    // Repeating heads: their SCC has an internal W-flagged edge.
    std::set<int> flagged_comps;
    for (std::size_t h = 0; h < H; ++h) {
        for (const auto& e : hedges[h]) {
            if (e.flag && comp[e.dst_head] == comp[h]) flagged_comps.insert(comp[h]);
        }
    }

    // Reachability from initial heads.
    std::vector<int> pred_edge(H, -1);
    std::vector<std::size_t> pred_head(H, SIZE_MAX);
    std::vector<char> seen(H, 0);
    std::deque<std::size_t> bfs;
    for (auto q0 : p.initial_states) {
        std::size_t h = head_id(q0, p.initial_stack_symbol);
        if (!seen[h]) {
            seen[h] = 1;
            bfs.push_back(h);
        }
    }
    std::optional<std::size_t> target;
    while (!bfs.empty()) {
        std::size_t h = bfs.front();
        bfs.pop_front();
        if (flagged_comps.count(comp[h])) {
            target = h;
            break;
        }
        for (std::size_t ei = 0; ei < hedges[h].size(); ++ei) {
            std::size_t d = hedges[h][ei].dst_head;
            if (!seen[d]) {
                seen[d] = 1;
                pred_head[d] = h;
                pred_edge[d] = static_cast<int>(ei);
                bfs.push_back(d);
            }
        }
    }
    if (!target) return std::nullopt;

    // --- Certificate extraction.
    // Expands a pop fact into its concrete rule sequence.
    std::function<void(const FactKey&, std::vector<std::size_t>&)> expand_fact =
        [&](const FactKey& k, std::vector<std::size_t>& out) {
            const PopDeriv& d = derivs.at(k);
            out.push_back(d.rule);
            if (d.f1) expand_fact(*d.f1, out);
            if (d.f2) expand_fact(*d.f2, out);
        };
    auto expand_edge = [&](std::size_t src_head, std::size_t ei,
                           std::vector<std::size_t>& out) {
        const HeadEdge& e = hedges[src_head][ei];
        out.push_back(e.rule);
        if (e.via_pop) expand_fact(*e.via_pop, out);
    };

    PdsRunLasso cert;
    {
        // Stem: initial head to the target head.
        std::vector<std::pair<std::size_t, std::size_t>> path; // (head, edge idx)
        std::size_t cur = *target;
        while (pred_head[cur] != SIZE_MAX) {
            path.push_back({pred_head[cur], static_cast<std::size_t>(pred_edge[cur])});
            cur = pred_head[cur];
        }
        std::reverse(path.begin(), path.end());
        for (const auto& [h, ei] : path) expand_edge(h, ei, cert.stem_rules);
    }
    {
        // Loop within the SCC: target ->* u -(flagged)-> v ->* target.
        int c = comp[*target];
        auto in_comp = [&](std::size_t h) { return comp[h] == c; };
        // BFS path helper restricted to the component.
        auto bfs_path = [&](std::size_t from, std::size_t to,
                            std::vector<std::pair<std::size_t, std::size_t>>& out) {
            std::vector<int> pe(H, -1);
            std::vector<std::size_t> ph(H, SIZE_MAX);
            std::vector<char> sn(H, 0);
            std::deque<std::size_t> w;
            sn[from] = 1;
            w.push_back(from);
            if (from == to) return true;
            while (!w.empty()) {
                std::size_t h = w.front();
                w.pop_front();
                for (std::size_t ei = 0; ei < hedges[h].size(); ++ei) {
                    std::size_t d = hedges[h][ei].dst_head;
                    if (!in_comp(d) || sn[d]) continue;
                    sn[d] = 1;
                    ph[d] = h;
                    pe[d] = static_cast<int>(ei);
                    if (d == to) {
                        std::vector<std::pair<std::size_t, std::size_t>> rev;
                        std::size_t cur = to;
                        while (ph[cur] != SIZE_MAX) {
                            rev.push_back({ph[cur], static_cast<std::size_t>(pe[cur])});
                            cur = ph[cur];
                        }
                        std::reverse(rev.begin(), rev.end());
                        out = rev;
                        return true;
                    }
                    w.push_back(d);
                }
            }
            return false;
        };
        // Find a flagged edge within the component reachable from target.
        bool built = false;
        for (std::size_t u = 0; u < H && !built; ++u) {
            if (comp[u] != c) continue;
            for (std::size_t ei = 0; ei < hedges[u].size() && !built; ++ei) {
                const auto& e = hedges[u][ei];
                if (!e.flag || comp[e.dst_head] != c) continue;
                std::vector<std::pair<std::size_t, std::size_t>> part1, part2;
                if (!bfs_path(*target, u, part1)) continue;
                if (!bfs_path(e.dst_head, *target, part2)) continue;
                for (const auto& [h, ej] : part1) expand_edge(h, ej, cert.loop_rules);
                expand_edge(u, ei, cert.loop_rules);
                for (const auto& [h, ej] : part2) expand_edge(h, ej, cert.loop_rules);
                built = true;
            }
        }
        if (!built) return std::nullopt; // should not happen
    }
    if (!replay_pds_lasso(p, cert)) {
        throw std::logic_error("pds certificate failed replay validation");
    }
    return cert;
}

bool replay_pds_lasso(const BuchiPushdownSystem& p, const PdsRunLasso& cert,
                      const ReplayOptions& opts) {
    if (cert.loop_rules.empty()) return false;

    auto apply = [&](PdsConfiguration& c, std::size_t rule_idx) -> bool {
        const auto& r = p.rules.at(rule_idx);
        if (c.state != r.src) return false;
        if (c.stack.size() < r.pop.size()) return false;
        for (std::size_t i = 0; i < r.pop.size(); ++i) {
            if (c.stack[i] != r.pop[i]) return false;
        }
        c.stack.erase(c.stack.begin(),
                      c.stack.begin() + static_cast<std::ptrdiff_t>(r.pop.size()));
        c.stack.insert(c.stack.begin(), r.push.begin(), r.push.end());
        c.state = r.dst;
        return true;
    };

    auto check_shape = [&](const PdsConfiguration& c) {
        if (!opts.check_stack_shape || p.post_sequence.empty()) return true;
        if (c.state < p.intermediate_state.size() && p.intermediate_state[c.state]) {
            return true; // between the halves of a split rule
        }
        // stack = [Post^{h-1}, ..., Post^0]
        const std::size_t h = c.stack.size();
        for (std::size_t i = 0; i < h; ++i) {
            std::size_t depth = h - 1 - i;
            std::size_t expected;
            if (depth < p.post_sequence.size()) {
                expected = p.post_sequence[depth];
            } else {
                std::size_t cycle_start = p.post_cycle_start;
                std::size_t cycle_len = p.post_sequence.size() - cycle_start;
                if (cycle_len == 0) return false;
                expected = p.post_sequence[cycle_start +
                                           (depth - cycle_start) % cycle_len];
            }
            if (c.stack[i] != expected) return false;
        }
        return true;
    };

    for (auto q0 : p.initial_states) {
        PdsConfiguration c{q0, {p.initial_stack_symbol}};
        bool ok = true;
        for (auto ri : cert.stem_rules) {
            if (!apply(c, ri)) {
                ok = false;
                break;
            }
            if (!check_shape(c)) return false;
        }
        if (!ok) continue;

        // The loop must contain a W rule and be infinitely iterable: replayed
        // from just the head symbol it never starves and returns to the same
        // state with the head symbol back on top.
        bool has_w = false;
        for (auto ri : cert.loop_rules) {
            if (p.rules.at(ri).tag == BuchiPushdownSystem::Tag::W) has_w = true;
        }
        if (!has_w) return false;
        if (c.stack.empty()) return false;

        PdsConfiguration head{c.state, {c.stack[0]}};
        std::size_t head_sym = c.stack[0];
        std::size_t head_state = c.state;
        PdsConfiguration probe = head;
        bool loop_ok = true;
        for (auto ri : cert.loop_rules) {
            if (!apply(probe, ri)) {
                loop_ok = false;
                break;
            }
        }
        if (!loop_ok) continue;
        if (probe.state != head_state || probe.stack.empty() || probe.stack[0] != head_sym) {
            continue;
        }
        return true;
    }
    return false;
}

EventualityResult decide_forall_exists_eventually(const Specification& s,
                                                  const EventualityOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    };

    if (!(s.hyper.is_forall_exists_star() && s.hyper.existential_count() == 1)) {
        throw std::invalid_argument(
            "eventuality decider handles forall-exists prefixes only; route "
            "forall-exists^m to the largest-model search");
    }
    const LtlFormula& body = s.hyper.body();
    if (body.op() != LtlOp::Eventually || !is_x_only(body.child(0))) {
        throw std::invalid_argument(
            "eventuality decider requires a body of shape F(X-only) with no "
            "propositional conjunct outside the F");
    }

    EventualityResult result;
    SolveOutcome& out = result.outcome;
    out.method = "pushdown";

    Specification flat = next_eliminate(s);
    TraceVar uvar = flat.hyper.prefix()[0].second;
    TraceVar evar = flat.hyper.prefix()[1].second;
    LtlFormula inner = flat.hyper.body().child(0);

    SymbolicNba psi_aut = reduce(translate(flat.ltl, flat.ap));
    StateLabeledNba sl = to_state_labeled(psi_aut, opts.state_label_atom_cap);
    if (sl.num_states == 0 || sl.initial.empty()) {
        out.verdict = Verdict::Unsat;
        out.note = "trace property admits no trace";
        out.elapsed_ms = elapsed();
        return result;
    }

    BuchiPushdownSystem raw = build_pds(sl, inner, uvar, evar, flat.ap);
    BuchiPushdownSystem norm = normalize_rules(raw);
    auto cert = pds_accepting_run(norm);
    if (cert) {
        out.verdict = Verdict::Sat;
        out.pds_run = *cert;
    } else {
        out.verdict = Verdict::Unsat;
        out.note = "pushdown system has no accepting run";
    }
    out.elapsed_ms = elapsed();
    result.system = std::move(norm);
    return result;
}

} // namespace hypersat
