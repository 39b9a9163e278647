#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypersat/atoms.hpp"

namespace hypersat {

/// Propositional constraint over atom indices, used as edge guards.
/// Guards stay symbolic; operations that need explicit letters expand
/// over the guard's support lazily.
class Prop {
public:
    enum class Kind : std::uint8_t { True, False, Var, Not, And, Or };

    static Prop tt();
    static Prop ff();
    static Prop var(std::size_t atom);
    static Prop lit(std::size_t atom, bool positive);
    static Prop negate(Prop a);
    static Prop conj(Prop a, Prop b);
    static Prop disj(Prop a, Prop b);
    static Prop iff(Prop a, Prop b);
    static Prop conj_all(const std::vector<Prop>& ps);

    /// Conjunction of literals describing exactly the given letter over `atoms` bits.
    static Prop exactly(Letter l, std::size_t atom_count);

    Kind kind() const { return node_->kind; }
    bool is_true() const { return node_->kind == Kind::True; }
    bool is_false() const { return node_->kind == Kind::False; }

    bool eval(Letter l) const;

    /// Bitmask of atoms occurring in the formula.
    std::uint32_t support() const { return node_->support; }

    /// Existentially quantifies one atom (Shannon expansion).
    Prop exists(std::size_t atom) const;

    /// Substitutes a constant for one atom.
    Prop assign(std::size_t atom, bool value) const;

    /// Renames atoms: old index i becomes mapping[i]. Mapping must be injective
    /// on the support.
    Prop rename(const std::vector<std::size_t>& mapping) const;

    bool satisfiable() const;
    /// Some satisfying letter (zero outside the support), if one exists.
    std::optional<Letter> satisfying_letter() const;

    /// All satisfying letters over `atom_count` atoms. Expands the full cube
    /// outside the support, so callers must keep atom_count small.
    std::vector<Letter> satisfying_letters(std::size_t atom_count) const;

    std::string to_string(const AtomSet& atoms) const;

private:
    struct Node {
        Kind kind;
        std::size_t atom = 0;
        std::shared_ptr<const Node> left, right;
        std::uint32_t support = 0;
    };

    explicit Prop(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Prop make(Node n);

    std::shared_ptr<const Node> node_;
};

} // namespace hypersat
