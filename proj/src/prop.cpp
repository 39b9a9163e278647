#include "hypersat/prop.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace hypersat {

Prop Prop::make(Node n) {
    switch (n.kind) {
        case Kind::Var:
            n.support = 1u << n.atom;
            break;
        case Kind::Not:
            n.support = n.left->support;
            break;
        case Kind::And:
        case Kind::Or:
            n.support = n.left->support | n.right->support;
            break;
        default:
            n.support = 0;
    }
    return Prop(std::make_shared<const Node>(std::move(n)));
}

Prop Prop::tt() { return make(Node{Kind::True}); }
Prop Prop::ff() { return make(Node{Kind::False}); }

Prop Prop::var(std::size_t atom) {
    if (atom >= kMaxAtoms) throw std::invalid_argument("atom index out of range");
    Node n{Kind::Var};
    n.atom = atom;
    return make(n);
}

Prop Prop::lit(std::size_t atom, bool positive) {
    return positive ? var(atom) : negate(var(atom));
}

Prop Prop::negate(Prop a) {
    switch (a.kind()) {
        case Kind::True: return ff();
        case Kind::False: return tt();
        case Kind::Not: return Prop(a.node_->left);
        default: break;
    }
    Node n{Kind::Not};
    n.left = a.node_;
    return make(n);
}

Prop Prop::conj(Prop a, Prop b) {
    if (a.is_false() || b.is_false()) return ff();
    if (a.is_true()) return b;
    if (b.is_true()) return a;
    if (a.node_ == b.node_) return a;
    Node n{Kind::And};
    n.left = a.node_;
    n.right = b.node_;
    return make(n);
}

Prop Prop::disj(Prop a, Prop b) {
    if (a.is_true() || b.is_true()) return tt();
    if (a.is_false()) return b;
    if (b.is_false()) return a;
    if (a.node_ == b.node_) return a;
    Node n{Kind::Or};
    n.left = a.node_;
    n.right = b.node_;
    return make(n);
}

Prop Prop::iff(Prop a, Prop b) {
    return disj(conj(a, b), conj(negate(a), negate(b)));
}

Prop Prop::conj_all(const std::vector<Prop>& ps) {
    Prop acc = tt();
    for (const auto& p : ps) acc = conj(acc, p);
    return acc;
}

Prop Prop::exactly(Letter l, std::size_t atom_count) {
    Prop acc = tt();
    for (std::size_t i = 0; i < atom_count; ++i) {
        acc = conj(acc, lit(i, letter_has(l, i)));
    }
    return acc;
}

bool Prop::eval(Letter l) const {
    switch (kind()) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Var: return letter_has(l, node_->atom);
        case Kind::Not: return !Prop(node_->left).eval(l);
        case Kind::And: return Prop(node_->left).eval(l) && Prop(node_->right).eval(l);
        case Kind::Or: return Prop(node_->left).eval(l) || Prop(node_->right).eval(l);
    }
    return false;
}

Prop Prop::assign(std::size_t atom, bool value) const {
    if (!((support() >> atom) & 1u)) return *this;
    switch (kind()) {
        case Kind::Var:
            return value ? tt() : ff();
        case Kind::Not:
            return negate(Prop(node_->left).assign(atom, value));
        case Kind::And:
            return conj(Prop(node_->left).assign(atom, value),
                        Prop(node_->right).assign(atom, value));
        case Kind::Or:
            return disj(Prop(node_->left).assign(atom, value),
                        Prop(node_->right).assign(atom, value));
        default:
            return *this;
    }
}

Prop Prop::exists(std::size_t atom) const {
    if (!((support() >> atom) & 1u)) return *this;
    return disj(assign(atom, true), assign(atom, false));
}

Prop Prop::rename(const std::vector<std::size_t>& mapping) const {
    switch (kind()) {
        case Kind::True:
        case Kind::False:
            return *this;
        case Kind::Var: {
            if (node_->atom >= mapping.size()) {
                throw std::invalid_argument("rename: atom outside mapping");
            }
            return var(mapping[node_->atom]);
        }
        case Kind::Not:
            return negate(Prop(node_->left).rename(mapping));
        case Kind::And:
            return conj(Prop(node_->left).rename(mapping), Prop(node_->right).rename(mapping));
        case Kind::Or:
            return disj(Prop(node_->left).rename(mapping), Prop(node_->right).rename(mapping));
    }
    return *this;
}

std::optional<Letter> Prop::satisfying_letter() const {
    std::uint32_t sup = support();
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < kMaxAtoms; ++i) {
        if ((sup >> i) & 1u) vars.push_back(i);
    }
    const std::size_t k = vars.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        Letter l = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if ((m >> i) & 1u) l |= (1u << vars[i]);
        }
        if (eval(l)) return l;
    }
    return std::nullopt;
}

bool Prop::satisfiable() const { return satisfying_letter().has_value(); }

std::vector<Letter> Prop::satisfying_letters(std::size_t atom_count) const {
    std::vector<Letter> out;
    const std::uint64_t n = std::uint64_t{1} << atom_count;
    for (std::uint64_t l = 0; l < n; ++l) {
        if (eval(static_cast<Letter>(l))) out.push_back(static_cast<Letter>(l));
    }
    return out;
}

std::string Prop::to_string(const AtomSet& atoms) const {
    switch (kind()) {
        case Kind::True: return "t";
        case Kind::False: return "f";
        case Kind::Var: return atoms.name(node_->atom);
        case Kind::Not: return "!" + Prop(node_->left).to_string(atoms);
        case Kind::And:
            return "(" + Prop(node_->left).to_string(atoms) + " & " +
                   Prop(node_->right).to_string(atoms) + ")";
        case Kind::Or:
            return "(" + Prop(node_->left).to_string(atoms) + " | " +
                   Prop(node_->right).to_string(atoms) + ")";
    }
    return "?";
}

} // namespace hypersat
