#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypersat/formula.hpp"
#include "hypersat/ltl2nba.hpp"
#include "hypersat/outcome.hpp"

namespace hypersat {

/// Pushdown system with Buchi acceptance carried by W-tagged rules
/// (transition-based); a state-based form can be derived on demand.
struct BuchiPushdownSystem {
    enum class Tag { F, B, W };

    struct Rule {
        std::size_t src;
        std::vector<std::size_t> pop; // nonempty, top first
        std::size_t dst;
        std::vector<std::size_t> push; // top first
        Tag tag = Tag::F;
    };

    std::size_t num_states = 0;
    std::vector<std::string> state_names;
    std::size_t num_stack_symbols = 0;
    std::vector<std::string> stack_symbol_names;
    std::vector<std::size_t> initial_states;
    std::size_t initial_stack_symbol = 0;
    std::vector<Rule> rules;

    /// Normalization intermediates (halves of split pop-2 rules).
    std::vector<char> intermediate_state;

    /// Derived state-based acceptance (filled by to_state_based_acceptance).
    std::vector<std::size_t> accepting_states;

    /// Stack-shape metadata when built from a trace automaton: post_sequence[n]
    /// is the stack symbol holding Post^n; the sequence is ultimately periodic
    /// with its cycle starting at post_cycle_start.
    std::vector<std::size_t> post_sequence;
    std::size_t post_cycle_start = 0;

    std::string rules_to_string() const; // one rule per line, --emit-pds format
};

struct PdsConfiguration {
    std::size_t state;
    std::vector<std::size_t> stack; // top first
};

/// Builds the F/B/W system over the trimmed state-labeled trace automaton.
/// `body` is a propositional constraint over two letter copies, written with
/// indexed atoms over `ap` and the two trace variables; the W condition reads
/// the current run's label for `uvar` and the witness run's label for `evar`.
/// Only Post-reachable sets are materialized as stack symbols.
BuchiPushdownSystem build_pds(const StateLabeledNba& trace_aut, const LtlFormula& body,
                              const TraceVar& uvar, const TraceVar& evar, const AtomSet& ap);

/// Splits pop-2 rules into two pop-1 rules through a fresh intermediate
/// state; accepting-run language preserved, tags preserved on one half.
BuchiPushdownSystem normalize_rules(const BuchiPushdownSystem& p);

/// Converts the W-tag acceptance to state-based acceptance by duplicating
/// W-rule targets into accepting copies that merge back silently.
BuchiPushdownSystem to_state_based_acceptance(const BuchiPushdownSystem& p);

/// Saturation-based emptiness: is there an infinite run from an initial
/// configuration using W-tagged rules infinitely often? Requires pop-1 rules.
std::optional<PdsRunLasso> pds_accepting_run(const BuchiPushdownSystem& p);

struct ReplayOptions {
    bool check_stack_shape = false; // verify the Post-sequence invariant
};

/// Replays a run lasso on the configuration level: checks rule applicability,
/// that the loop segment is infinitely iterable, and that it contains a
/// W-tagged rule.
bool replay_pds_lasso(const BuchiPushdownSystem& p, const PdsRunLasso& cert,
                      const ReplayOptions& opts = {});

struct EventualityOptions {
    std::size_t state_label_atom_cap = 8;
};

struct EventualityResult {
    SolveOutcome outcome;
    std::optional<BuchiPushdownSystem> system; // normalized system, for replay
};

/// Complete decision procedure for specifications (psi, forall pi exists pi'.
/// F(X^*)): next elimination, trace automaton, F/B/W pushdown system,
/// saturation emptiness.
EventualityResult decide_forall_exists_eventually(const Specification& s,
                                                  const EventualityOptions& opts = {});

} // namespace hypersat
