#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypersat/atoms.hpp"

namespace hypersat {

enum class LtlOp {
    Atom,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    WeakUntil,
    Release,
    Eventually,
    Globally,
};

bool is_unary(LtlOp op);
bool is_binary(LtlOp op);
bool is_temporal(LtlOp op);

/// Immutable LTL syntax tree. Derived operators (F, G, W, R, ->, <->) are
/// first-class nodes so classifiers can match surface shapes; `to_core`
/// desugars on demand.
class LtlFormula {
public:
    static LtlFormula atom(std::string name);
    static LtlFormula tt();
    static LtlFormula ff();
    static LtlFormula make_not(LtlFormula a);
    static LtlFormula make_and(LtlFormula a, LtlFormula b);
    static LtlFormula make_or(LtlFormula a, LtlFormula b);
    static LtlFormula implies(LtlFormula a, LtlFormula b);
    static LtlFormula iff(LtlFormula a, LtlFormula b);
    static LtlFormula next(LtlFormula a);
    static LtlFormula until(LtlFormula a, LtlFormula b);
    static LtlFormula weak_until(LtlFormula a, LtlFormula b);
    static LtlFormula release(LtlFormula a, LtlFormula b);
    static LtlFormula eventually(LtlFormula a);
    static LtlFormula globally(LtlFormula a);
    static LtlFormula conj_all(const std::vector<LtlFormula>& fs);

    LtlOp op() const { return node_->op; }
    const std::string& atom_name() const;
    const LtlFormula& child(std::size_t i) const;
    std::size_t arity() const { return node_->kids.size(); }

    bool operator==(const LtlFormula& other) const;
    bool operator!=(const LtlFormula& other) const { return !(*this == other); }

    /// Structural key, precomputed at construction; equal formulas share it.
    const std::string& key() const;

    /// Number of AST nodes.
    std::size_t size() const;

    /// Collects atom names (sorted, deduplicated).
    std::vector<std::string> atom_names() const;

    bool contains_temporal() const;

    /// Maximum X-nesting depth.
    std::size_t x_depth() const;

    std::string to_string() const;

    /// Applies a name substitution to every atom.
    LtlFormula rename_atoms(const std::vector<std::pair<std::string, std::string>>& subst) const;

private:
    struct Node {
        LtlOp op;
        std::string atom;
        std::vector<LtlFormula> kids;
        std::string key;
    };
    explicit LtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static LtlFormula make(LtlOp op, std::vector<LtlFormula> kids, std::string atom = {});

    std::shared_ptr<const Node> node_;
};

/// Negation normal form: negations pushed to atoms; -> and <-> expanded.
LtlFormula to_nnf(const LtlFormula& f);

/// Desugars to the core operators (atoms, constants, not, and, X, U).
LtlFormula to_core(const LtlFormula& f);

struct TraceVar {
    std::string id;
    bool operator==(const TraceVar& other) const { return id == other.id; }
    bool operator!=(const TraceVar& other) const { return !(*this == other); }
};

enum class Quant { Forall, Exists };

/// Indexed atoms of a HyperLTL body are encoded as "prop@var" in the
/// underlying LtlFormula. '@' cannot appear in user input.
std::string indexed_atom(const std::string& prop, const std::string& var);
std::optional<std::pair<std::string, std::string>> split_indexed_atom(const std::string& name);

class HyperLtlFormula {
public:
    HyperLtlFormula() : body_(LtlFormula::tt()) {}
    HyperLtlFormula(std::vector<std::pair<Quant, TraceVar>> prefix, LtlFormula body);

    const std::vector<std::pair<Quant, TraceVar>>& prefix() const { return prefix_; }
    const LtlFormula& body() const { return body_; }

    std::size_t quantifier_count() const { return prefix_.size(); }
    std::size_t universal_count() const;
    std::size_t existential_count() const;

    /// True when the prefix is forall^n exists^m (all universals first).
    bool is_forall_star_exists_star() const;
    /// True when the prefix is a single forall followed by m >= 0 exists.
    bool is_forall_exists_star() const;

    std::vector<TraceVar> universal_vars() const;
    std::vector<TraceVar> existential_vars() const;

    /// Propositions used in the body (without trace indices).
    std::vector<std::string> propositions() const;

    bool operator==(const HyperLtlFormula& other) const;

    std::string to_string() const;

private:
    std::vector<std::pair<Quant, TraceVar>> prefix_;
    LtlFormula body_;
};

/// A specification pairs an LTL trace property with a HyperLTL property
/// over the same declared atomic propositions.
struct Specification {
    AtomSet ap;
    LtlFormula ltl = LtlFormula::tt();
    HyperLtlFormula hyper;

    std::string to_string() const;
};

enum class FragmentTag {
    XOnly,
    SingleEventuality,
    EventualityConjunction,
    TemporalSafety,
    ForallExistsStar,
    General,
};

std::string to_string(FragmentTag tag);

/// Most specific tag per the fixed priority order
/// XOnly > SingleEventuality > EventualityConjunction > TemporalSafety >
/// ForallExistsStar > General.
FragmentTag classify_fragment(const Specification& s);

/// Body decomposition used by the classifiers: a conjunction is split into
/// F-terms and a temporal-operator-free remainder. Returns nothing when a
/// conjunct is neither.
struct EventualitySplit {
    std::vector<LtlFormula> eventualities; // the arguments of the F operators
    std::optional<LtlFormula> propositional_rest;
};
std::optional<EventualitySplit> split_eventuality_conjunction(const LtlFormula& body);

/// True when f uses no temporal operator other than X.
bool is_x_only(const LtlFormula& f);

} // namespace hypersat
