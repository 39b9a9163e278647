#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "hypersat/nba.hpp"

namespace hypersat {

namespace {

struct LetterTable {
    std::size_t letters;
    // successors[q][sigma] -> sorted states
    std::vector<std::vector<std::vector<int>>> succ;
};

LetterTable build_letter_table(const SymbolicNba& a) {
    LetterTable t;
    t.letters = a.atoms.letter_count();
    t.succ.assign(a.num_states, std::vector<std::vector<int>>(t.letters));
    for (const auto& e : a.edges) {
        for (Letter l = 0; l < t.letters; ++l) {
            if (e.guard.eval(l)) t.succ[e.src][l].push_back(static_cast<int>(e.dst));
        }
    }
    for (auto& per_state : t.succ) {
        for (auto& v : per_state) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }
    return t;
}

bool is_deterministic(const SymbolicNba& a, const LetterTable& t) {
    if (a.initial.size() > 1) return false;
    for (std::size_t q = 0; q < a.num_states; ++q) {
        for (Letter l = 0; l < t.letters; ++l) {
            if (t.succ[q][l].size() > 1) return false;
        }
    }
    return true;
}

/// Complement of a deterministic automaton: a normal copy plus an accepting
/// copy that must avoid accepting states forever; runs that die divert to an
/// accepting sink.
SymbolicNba dba_complement(const SymbolicNba& a, const LetterTable& t) {
    std::vector<char> acc(a.num_states, 0);
    for (auto q : a.accepting) acc[q] = 1;

    SymbolicNba out;
    out.atoms = a.atoms;
    // Layout: [0, n) normal copy, [n, 2n) avoiding copy, 2n sink.
    const std::size_t n = a.num_states;
    out.num_states = 2 * n + 1;
    const std::size_t sink = 2 * n;
    out.initial = {a.initial.empty() ? sink : a.initial[0]};
    for (std::size_t q = 0; q < n; ++q) out.accepting.push_back(n + q);
    out.accepting.push_back(sink);

    std::map<std::pair<std::size_t, std::size_t>, Prop> guards;
    auto add = [&](std::size_t src, Letter l, std::size_t dst) {
        auto key = std::make_pair(src, dst);
        Prop g = Prop::exactly(l, a.atoms.size());
        auto it = guards.find(key);
        if (it == guards.end()) {
            guards.emplace(key, g);
        } else {
            it->second = Prop::disj(it->second, g);
        }
    };

    for (Letter l = 0; l < t.letters; ++l) {
        add(sink, l, sink);
        for (std::size_t q = 0; q < n; ++q) {
            const auto& ss = t.succ[q][l];
            if (ss.empty()) {
                add(q, l, sink);
                add(n + q, l, sink);
                continue;
            }
            std::size_t dst = static_cast<std::size_t>(ss[0]);
            add(q, l, dst);
            if (!acc[dst]) {
                add(q, l, n + dst);
                add(n + q, l, n + dst);
            }
        }
    }
    for (auto& [key, g] : guards) {
        out.edges.push_back({key.first, g, key.second});
    }
    return trim(out);
}

using Ranking = std::vector<int>; // indexed by position in the sorted domain

struct TightState {
    bool waiting = true;
    std::vector<int> domain; // sorted states (S)
    Ranking f;               // ranks per domain entry (tight only)
    std::vector<int> obligation; // breakpoint O, sorted (tight only)
    int stage = 0;               // tracked even rank i (tight only)

    bool operator<(const TightState& o) const {
        return std::tie(waiting, domain, f, obligation, stage) <
               std::tie(o.waiting, o.domain, o.f, o.obligation, o.stage);
    }
};

int max_rank(const Ranking& f) {
    int r = 0;
    for (int x : f) r = std::max(r, x);
    return r;
}

bool is_tight(const Ranking& f) {
    int r = max_rank(f);
    if (r % 2 == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(r) + 1, 0);
    for (int x : f) seen[static_cast<std::size_t>(x)] = 1;
    for (int odd = 1; odd <= r; odd += 2) {
        if (!seen[static_cast<std::size_t>(odd)]) return false;
    }
    return true;
}

/// Enumerates tight rankings over `domain` with per-state caps and the given
/// max rank; accepting states take even ranks only. Prunes branches that can
/// no longer cover every odd rank up to the target.
void enumerate_tight(const std::vector<int>& domain, const std::vector<int>& caps,
                     const std::vector<char>& is_acc, int target_rank,
                     std::vector<Ranking>& out, std::size_t& budget) {
    if (target_rank % 2 == 0) return;
    Ranking cur(domain.size(), 0);
    const std::size_t odd_count = static_cast<std::size_t>(target_rank + 1) / 2;
    std::vector<int> covered(odd_count, 0); // occupancy count per odd rank

    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                            std::size_t uncovered) {
        if (budget == 0) {
            throw ResourceLimitError("complement ranking enumeration budget", 1, 0);
        }
        --budget;
        if (uncovered > domain.size() - pos) return; // cannot become tight
        if (pos == domain.size()) {
            out.push_back(cur);
            return;
        }
        int cap = std::min(caps[pos], target_rank);
        bool acc = is_acc[static_cast<std::size_t>(domain[pos])] != 0;
        if (cap < 0) return;
        for (int r = acc ? (cap - (cap % 2)) : cap; r >= 0; acc ? r -= 2 : --r) {
            cur[pos] = r;
            if (r % 2 == 1) {
                std::size_t slot = static_cast<std::size_t>(r / 2);
                bool newly = covered[slot] == 0;
                ++covered[slot];
                rec(pos + 1, uncovered - (newly ? 1 : 0));
                --covered[slot];
            } else {
                rec(pos + 1, uncovered);
            }
        }
    };
    rec(0, odd_count);
}

void keep_maximal(std::vector<Ranking>& rankings) {
    std::vector<Ranking> out;
    for (const auto& r : rankings) {
        bool dominated = false;
        for (const auto& r2 : rankings) {
            if (&r2 == &r || r2 == r) continue;
            if (max_rank(r2) != max_rank(r)) continue;
            bool ge = true, strict = false;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (r2[i] < r[i]) { ge = false; break; }
                if (r2[i] > r[i]) strict = true;
            }
            if (ge && strict) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    rankings = std::move(out);
}

SymbolicNba rank_complement(const SymbolicNba& a, const LetterTable& t,
                            const ComplementOptions& opts) {
    std::vector<char> acc(a.num_states, 0);
    for (auto q : a.accepting) acc[q] = 1;
    const std::vector<char>& accv = acc;

    std::size_t budget = opts.node_budget;
    const auto wall_start = std::chrono::steady_clock::now();
    auto check_wall = [&]() {
        double used = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - wall_start)
                          .count();
        if (used > opts.budget_ms) {
            throw ResourceLimitError("complement wall budget",
                                     static_cast<std::size_t>(used),
                                     static_cast<std::size_t>(opts.budget_ms));
        }
    };

    std::map<std::tuple<std::vector<int>, std::vector<int>, int>, std::vector<Ranking>>
        ranking_cache;
    auto tight_rankings_cached = [&](const std::vector<int>& dom, const std::vector<int>& caps,
                                     int r) -> const std::vector<Ranking>& {
        if (dom.size() > opts.domain_cap) {
            throw ResourceLimitError("complement ranking domain cap", dom.size(),
                                     opts.domain_cap);
        }
        check_wall();
        auto key = std::make_tuple(dom, caps, r);
        auto it = ranking_cache.find(key);
        if (it != ranking_cache.end()) return it->second;
        std::vector<Ranking> out;
        enumerate_tight(dom, caps, accv, r, out, budget);
        return ranking_cache.emplace(std::move(key), std::move(out)).first->second;
    };
    auto spend = [&](std::size_t amount) {
        if (budget < amount) {
            throw ResourceLimitError("complement node budget", opts.node_budget + amount,
                                     opts.node_budget);
        }
        budget -= amount;
    };

    std::map<TightState, std::size_t> ids;
    std::deque<TightState> work;
    SymbolicNba out;
    out.atoms = a.atoms;

    // State 0 is the accepting sink for words whose run dag dies.
    out.num_states = 1;
    const std::size_t sink = 0;
    out.accepting.push_back(sink);
    out.edges.push_back({sink, Prop::tt(), sink});

    auto state_id = [&](const TightState& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        spend(1);
        std::size_t id = out.num_states++;
        ids.emplace(s, id);
        work.push_back(s);
        if (!s.waiting && s.obligation.empty()) out.accepting.push_back(id);
        return id;
    };

    std::map<std::pair<std::size_t, std::size_t>, Prop> guards;
    auto add_edge = [&](std::size_t src, Letter l, std::size_t dst) {
        auto key = std::make_pair(src, dst);
        Prop g = Prop::exactly(l, a.atoms.size());
        auto it = guards.find(key);
        if (it == guards.end()) {
            guards.emplace(key, g);
        } else {
            it->second = Prop::disj(it->second, g);
        }
    };

    auto delta_set = [&](const std::vector<int>& qs, Letter l) {
        std::set<int> s;
        for (int q : qs) {
            for (int d : t.succ[static_cast<std::size_t>(q)][l]) s.insert(d);
        }
        return std::vector<int>(s.begin(), s.end());
    };

    auto nonacc_count = [&](const std::vector<int>& dom) {
        std::size_t k = 0;
        for (int q : dom) {
            if (!acc[static_cast<std::size_t>(q)]) ++k;
        }
        return k;
    };

    /// Jump targets: all maximal tight rankings of `dom`, breakpoint at rank 0.
    auto jump_targets = [&](const std::vector<int>& dom) {
        std::vector<TightState> targets;
        if (dom.empty()) return targets;
        std::size_t nonacc = nonacc_count(dom);
        if (nonacc == 0) return targets;
        int rmax = static_cast<int>(2 * nonacc) - 1;
        std::vector<Ranking> rankings;
        for (int r = 1; r <= rmax; r += 2) {
            std::vector<int> caps(dom.size(), r);
            const auto& found = tight_rankings_cached(dom, caps, r);
            rankings.insert(rankings.end(), found.begin(), found.end());
        }
        keep_maximal(rankings);
        for (const auto& f : rankings) {
            TightState ts;
            ts.waiting = false;
            ts.domain = dom;
            ts.f = f;
            ts.stage = 0;
            for (std::size_t i = 0; i < dom.size(); ++i) {
                if (f[i] == 0) ts.obligation.push_back(dom[i]);
            }
            targets.push_back(ts);
        }
        return targets;
    };

    TightState init;
    init.waiting = true;
    for (auto q : a.initial) init.domain.push_back(static_cast<int>(q));
    std::sort(init.domain.begin(), init.domain.end());
    out.initial = {state_id(init)};


    std::size_t wall_tick = 0;
    while (!work.empty()) {
        TightState s = work.front();
        work.pop_front();
        std::size_t src = ids[s];
        if (++wall_tick % 64 == 0) check_wall();

        for (Letter l = 0; l < t.letters; ++l) {
            std::vector<int> succ_dom = delta_set(s.domain, l);
            if (succ_dom.empty()) {
                add_edge(src, l, sink);
                continue;
            }
            if (s.waiting) {
                TightState w2;
                w2.waiting = true;
                w2.domain = succ_dom;
                add_edge(src, l, state_id(w2));
                for (const auto& ts : jump_targets(succ_dom)) {
                    add_edge(src, l, state_id(ts));
                }
                continue;
            }

            // Tight phase: every consistent tight ranking with the same max
            // rank is a successor (ranks may drop voluntarily; that is what
            // lets breakpoint states discharge).
            const int r = max_rank(s.f);
            std::vector<int> caps(succ_dom.size(), INT32_MAX);
            for (std::size_t i = 0; i < s.domain.size(); ++i) {
                int q = s.domain[i];
                for (int d : t.succ[static_cast<std::size_t>(q)][l]) {
                    auto it = std::lower_bound(succ_dom.begin(), succ_dom.end(), d);
                    std::size_t di = static_cast<std::size_t>(it - succ_dom.begin());
                    caps[di] = std::min(caps[di], s.f[i]);
                }
            }
            const std::vector<Ranking>& cands = tight_rankings_cached(succ_dom, caps, r);
            for (const auto& cand : cands) {
                auto rank_of = [&](int q) {
                    auto it = std::lower_bound(succ_dom.begin(), succ_dom.end(), q);
                    return cand[static_cast<std::size_t>(it - succ_dom.begin())];
                };
                TightState n3;
                n3.waiting = false;
                n3.domain = succ_dom;
                n3.f = cand;
                if (s.obligation.empty()) {
                    n3.stage = (s.stage + 2) % (r + 1);
                    for (int q : succ_dom) {
                        if (rank_of(q) == n3.stage) n3.obligation.push_back(q);
                    }
                } else {
                    n3.stage = s.stage;
                    auto osucc = delta_set(s.obligation, l);
                    for (int q : osucc) {
                        if (std::binary_search(succ_dom.begin(), succ_dom.end(), q) &&
                            rank_of(q) == s.stage) {
                            n3.obligation.push_back(q);
                        }
                    }
                }
                add_edge(src, l, state_id(n3));
            }
        }
    }

    for (auto& [key, g] : guards) {
        out.edges.push_back({key.first, g, key.second});
    }
    return trim(out);
}

} // namespace

SymbolicNba complement(const SymbolicNba& a, const ComplementOptions& opts) {
    SymbolicNba r = reduce(a);
    if (r.num_states == 0 || r.initial.empty()) {
        return universal_nba(a.atoms);
    }
    if (r.atoms.size() > opts.atom_cap) {
        throw ResourceLimitError("complement alphabet cap", r.atoms.size(), opts.atom_cap);
    }
    LetterTable t = build_letter_table(r);
    if (is_deterministic(r, t)) {
        return dba_complement(r, t);
    }
    if (r.num_states > opts.state_cap) {
        throw ResourceLimitError("complement state cap", r.num_states, opts.state_cap);
    }
    return rank_complement(r, t, opts);
}

} // namespace hypersat
