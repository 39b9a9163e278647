#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypersat/atoms.hpp"
#include "hypersat/lasso.hpp"
#include "hypersat/prop.hpp"

namespace hypersat {

/// Raised when an operation would exceed a configured resource cap.
/// Callers degrade to "unknown" instead of answering wrong.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, std::size_t required, std::size_t allowed)
        : std::runtime_error(what + " (required " + std::to_string(required) + ", allowed " +
                             std::to_string(allowed) + ")"),
          required_(required),
          allowed_(allowed) {}
    std::size_t required() const { return required_; }
    std::size_t allowed() const { return allowed_; }

private:
    std::size_t required_;
    std::size_t allowed_;
};

/// Nondeterministic Buchi automaton with edges guarded by propositional
/// constraints over the atom set.
struct SymbolicNba {
    struct Edge {
        std::size_t src;
        Prop guard;
        std::size_t dst;
    };

    AtomSet atoms;
    std::size_t num_states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::size_t> accepting;
    std::vector<Edge> edges;

    bool is_initial(std::size_t q) const;
    bool is_accepting(std::size_t q) const;
    std::vector<std::vector<std::size_t>> adjacency() const; // edge indices per source

    void check_valid() const;
};

/// Run-existence automaton: acceptance is the existence of an infinite run.
/// All states are non-empty (lie on some infinite path).
struct SafetyAutomaton {
    struct Edge {
        std::size_t src;
        Prop guard;
        std::size_t dst;
    };

    AtomSet atoms;
    std::size_t num_states = 0;
    std::optional<std::size_t> initial; // absent iff the automaton is empty
    std::vector<Edge> edges;
};

SymbolicNba universal_nba(const AtomSet& atoms);
SymbolicNba empty_nba(const AtomSet& atoms);

/// Buchi product; languages intersect. State count is at most 2 |a| |b|.
SymbolicNba intersect(const SymbolicNba& a, const SymbolicNba& b);

/// Existential projection: keeps only `keep` atoms (a subset of a's atoms, in
/// a's order); dropped atoms are existentially quantified out of each guard.
SymbolicNba project_exists(const SymbolicNba& a, const std::vector<std::string>& keep);

/// Renames atoms; the mapping must cover every atom injectively.
SymbolicNba relabel(const SymbolicNba& a,
                    const std::vector<std::pair<std::string, std::string>>& rename);

/// Re-embeds a into a larger atom set (guards unchanged on the shared atoms).
SymbolicNba extend_atoms(const SymbolicNba& a, const AtomSet& superset);

/// Accepting lasso if the language is nonempty.
std::optional<LassoWord> find_accepting_lasso(const SymbolicNba& a);
inline bool is_empty(const SymbolicNba& a) { return !find_accepting_lasso(a).has_value(); }

struct ComplementOptions {
    std::size_t state_cap = 12;       // input state bound after trimming
    std::size_t node_budget = 300000; // constructed complement states
    std::size_t atom_cap = 12;        // alphabet expansion bound
    std::size_t domain_cap = 11;      // ranking-domain size bound
    double budget_ms = 1e9;           // wall clock

    ComplementOptions() = default;
    ComplementOptions(std::size_t states, std::size_t nodes, std::size_t atoms)
        : state_cap(states), node_budget(nodes), atom_cap(atoms) {}
};

/// Rank-based complementation (waiting/tight rankings) with a deterministic
/// fast path. Throws ResourceLimitError beyond the caps.
SymbolicNba complement(const SymbolicNba& a, const ComplementOptions& opts = {});

struct ContainsResult {
    bool holds = false;
    std::optional<LassoWord> counterexample; // member of small, not of big
};

/// Language inclusion L(small) <= L(big), via emptiness of small intersected
/// with the complement of big.
ContainsResult contains(const SymbolicNba& big, const SymbolicNba& small,
                        const ComplementOptions& opts = {});

/// Sufficient structural test for L(a) = Sigma^omega: a tautology-guarded
/// path from an initial state to an accepting state on a tautology-guarded
/// cycle. Never a false positive; may miss universal automata.
bool is_structurally_universal(const SymbolicNba& a);

/// Membership of stem.loop^w, decided by product with the lasso automaton.
bool member_lasso(const SymbolicNba& a, const LassoWord& w);

/// Drops states that are unreachable or have no accepting run; language unchanged.
SymbolicNba trim(const SymbolicNba& a);

/// Language-preserving bisimulation quotient (over expanded letters).
/// Falls back to the input when the alphabet is too large to expand.
SymbolicNba quotient_bisim(const SymbolicNba& a, std::size_t atom_cap = 12);

/// Trim followed by quotient; the workhorse reduction between operations.
SymbolicNba reduce(const SymbolicNba& a);

/// Safety closure: accepts words all of whose finite prefixes extend to
/// members of L(a). Construction: trim, then drop acceptance.
SafetyAutomaton safety_closure(const SymbolicNba& a);

/// The closure as an NBA with every state accepting.
SymbolicNba closure_nba(const SymbolicNba& a);
SymbolicNba safety_to_nba(const SafetyAutomaton& sa);

/// Semantic safety: the closure is contained in the language.
bool is_safety_language(const SymbolicNba& a, const ComplementOptions& opts = {});

/// Semantic liveness: the closure is universal.
bool is_liveness_language(const SymbolicNba& a, const ComplementOptions& opts = {});

/// HOA v1 text with state-based Buchi acceptance.
std::string export_hoa(const SymbolicNba& a, const std::string& name = "");
SymbolicNba import_hoa(const std::string& text);

} // namespace hypersat
