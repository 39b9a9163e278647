#pragma once

#include <random>

#include "hypersat/formula.hpp"
#include "hypersat/lasso.hpp"
#include "hypersat/nba.hpp"

namespace hypersat::testutil {

/// Deterministic random plain-LTL formula over the given atom set.
inline LtlFormula random_ltl(std::mt19937_64& rng, const AtomSet& ap, std::size_t size) {
    using F = LtlFormula;
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    if (size <= 1) return F::atom(ap.name(pick(ap.size())));
    if (size == 2) {
        switch (pick(4)) {
            case 0: return F::make_not(random_ltl(rng, ap, 1));
            case 1: return F::next(random_ltl(rng, ap, 1));
            case 2: return F::eventually(random_ltl(rng, ap, 1));
            default: return F::globally(random_ltl(rng, ap, 1));
        }
    }
    if (pick(11) < 4) {
        switch (pick(4)) {
            case 0: return F::make_not(random_ltl(rng, ap, size - 1));
            case 1: return F::next(random_ltl(rng, ap, size - 1));
            case 2: return F::eventually(random_ltl(rng, ap, size - 1));
            default: return F::globally(random_ltl(rng, ap, size - 1));
        }
    }
    std::size_t left = 1 + pick(size - 2);
    LtlFormula l = random_ltl(rng, ap, left);
    LtlFormula r = random_ltl(rng, ap, size - 1 - left);
    switch (pick(7)) {
        case 0: return F::make_and(l, r);
        case 1: return F::make_or(l, r);
        case 2: return F::implies(l, r);
        case 3: return F::iff(l, r);
        case 4: return F::until(l, r);
        case 5: return F::weak_until(l, r);
        default: return F::release(l, r);
    }
}

inline LassoWord random_lasso(std::mt19937_64& rng, std::size_t atom_count,
                              std::size_t max_stem, std::size_t max_loop) {
    LassoWord w;
    const Letter mask = atom_count == 0 ? 0 : ((1u << atom_count) - 1u);
    std::size_t stem = rng() % (max_stem + 1);
    std::size_t loop = 1 + rng() % max_loop;
    for (std::size_t i = 0; i < stem; ++i) w.stem.push_back(static_cast<Letter>(rng()) & mask);
    for (std::size_t i = 0; i < loop; ++i) w.loop.push_back(static_cast<Letter>(rng()) & mask);
    return w;
}

/// Random symbolic automaton with minterm guards.
inline SymbolicNba random_nba(std::mt19937_64& rng, const AtomSet& ap, std::size_t states,
                              double edge_density = 0.5, double acc_prob = 0.4) {
    SymbolicNba a;
    a.atoms = ap;
    a.num_states = states;
    a.initial = {0};
    const std::size_t letters = ap.letter_count();
    for (std::size_t q = 0; q < states; ++q) {
        if ((rng() % 1000) / 1000.0 < acc_prob) a.accepting.push_back(q);
        for (std::size_t d = 0; d < states; ++d) {
            for (Letter l = 0; l < letters; ++l) {
                if ((rng() % 1000) / 1000.0 < edge_density / static_cast<double>(letters) * 2) {
                    a.edges.push_back({q, Prop::exactly(l, ap.size()), d});
                }
            }
        }
    }
    if (a.accepting.empty()) a.accepting.push_back(rng() % states);
    return a;
}

} // namespace hypersat::testutil
