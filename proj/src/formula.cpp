#include "hypersat/formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hypersat {

bool is_unary(LtlOp op) {
    return op == LtlOp::Not || op == LtlOp::Next || op == LtlOp::Eventually ||
           op == LtlOp::Globally;
}

bool is_binary(LtlOp op) {
    return op == LtlOp::And || op == LtlOp::Or || op == LtlOp::Implies || op == LtlOp::Iff ||
           op == LtlOp::Until || op == LtlOp::WeakUntil || op == LtlOp::Release;
}

bool is_temporal(LtlOp op) {
    return op == LtlOp::Next || op == LtlOp::Until || op == LtlOp::WeakUntil ||
           op == LtlOp::Release || op == LtlOp::Eventually || op == LtlOp::Globally;
}

LtlFormula LtlFormula::make(LtlOp op, std::vector<LtlFormula> kids, std::string atom) {
    Node n{op, std::move(atom), std::move(kids), {}};
    n.key.push_back(static_cast<char>('A' + static_cast<int>(op)));
    n.key += n.atom;
    for (const auto& k : n.kids) {
        n.key.push_back('(');
        n.key += k.key();
        n.key.push_back(')');
    }
    return LtlFormula(std::make_shared<const Node>(std::move(n)));
}

const std::string& LtlFormula::key() const { return node_->key; }

LtlFormula LtlFormula::atom(std::string name) { return make(LtlOp::Atom, {}, std::move(name)); }
LtlFormula LtlFormula::tt() { return make(LtlOp::True, {}); }
LtlFormula LtlFormula::ff() { return make(LtlOp::False, {}); }
LtlFormula LtlFormula::make_not(LtlFormula a) { return make(LtlOp::Not, {std::move(a)}); }
LtlFormula LtlFormula::make_and(LtlFormula a, LtlFormula b) {
    return make(LtlOp::And, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::make_or(LtlFormula a, LtlFormula b) {
    return make(LtlOp::Or, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::implies(LtlFormula a, LtlFormula b) {
    return make(LtlOp::Implies, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::iff(LtlFormula a, LtlFormula b) {
    return make(LtlOp::Iff, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::next(LtlFormula a) { return make(LtlOp::Next, {std::move(a)}); }
LtlFormula LtlFormula::until(LtlFormula a, LtlFormula b) {
    return make(LtlOp::Until, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::weak_until(LtlFormula a, LtlFormula b) {
    return make(LtlOp::WeakUntil, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::release(LtlFormula a, LtlFormula b) {
    return make(LtlOp::Release, {std::move(a), std::move(b)});
}
LtlFormula LtlFormula::eventually(LtlFormula a) { return make(LtlOp::Eventually, {std::move(a)}); }
LtlFormula LtlFormula::globally(LtlFormula a) { return make(LtlOp::Globally, {std::move(a)}); }

LtlFormula LtlFormula::conj_all(const std::vector<LtlFormula>& fs) {
    if (fs.empty()) return tt();
    LtlFormula acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = make_and(acc, fs[i]);
    return acc;
}

const std::string& LtlFormula::atom_name() const {
    if (op() != LtlOp::Atom) throw std::logic_error("atom_name on non-atom");
    return node_->atom;
}

const LtlFormula& LtlFormula::child(std::size_t i) const { return node_->kids.at(i); }

bool LtlFormula::operator==(const LtlFormula& other) const {
    return node_ == other.node_ || node_->key == other.node_->key;
}

std::size_t LtlFormula::size() const {
    std::size_t n = 1;
    for (const auto& k : node_->kids) n += k.size();
    return n;
}

namespace {
void collect_atoms(const LtlFormula& f, std::set<std::string>& out) {
    if (f.op() == LtlOp::Atom) {
        out.insert(f.atom_name());
        return;
    }
    for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.child(i), out);
}
} // namespace

std::vector<std::string> LtlFormula::atom_names() const {
    std::set<std::string> s;
    collect_atoms(*this, s);
    return {s.begin(), s.end()};
}

bool LtlFormula::contains_temporal() const {
    if (is_temporal(op())) return true;
    for (const auto& k : node_->kids) {
        if (k.contains_temporal()) return true;
    }
    return false;
}

std::size_t LtlFormula::x_depth() const {
    std::size_t best = 0;
    for (const auto& k : node_->kids) best = std::max(best, k.x_depth());
    if (op() == LtlOp::Next) best += 1;
    return best;
}

LtlFormula LtlFormula::rename_atoms(
    const std::vector<std::pair<std::string, std::string>>& subst) const {
    if (op() == LtlOp::Atom) {
        for (const auto& [from, to] : subst) {
            if (node_->atom == from) return atom(to);
        }
        return *this;
    }
    std::vector<LtlFormula> kids;
    kids.reserve(arity());
    for (const auto& k : node_->kids) kids.push_back(k.rename_atoms(subst));
    return make(op(), std::move(kids), node_->atom);
}

namespace {

int precedence(LtlOp op) {
    switch (op) {
        case LtlOp::Iff: return 1;
        case LtlOp::Implies: return 2;
        case LtlOp::Or: return 3;
        case LtlOp::And: return 4;
        case LtlOp::Until:
        case LtlOp::WeakUntil:
        case LtlOp::Release: return 5;
        case LtlOp::Not:
        case LtlOp::Next:
        case LtlOp::Eventually:
        case LtlOp::Globally: return 6;
        default: return 7;
    }
}

const char* op_token(LtlOp op) {
    switch (op) {
        case LtlOp::Not: return "!";
        case LtlOp::And: return "&";
        case LtlOp::Or: return "|";
        case LtlOp::Implies: return "->";
        case LtlOp::Iff: return "<->";
        case LtlOp::Next: return "X";
        case LtlOp::Until: return "U";
        case LtlOp::WeakUntil: return "W";
        case LtlOp::Release: return "R";
        case LtlOp::Eventually: return "F";
        case LtlOp::Globally: return "G";
        default: return "?";
    }
}

std::string print_rec(const LtlFormula& f, int parent_prec) {
    const int prec = precedence(f.op());
    std::string out;
    switch (f.op()) {
        case LtlOp::Atom: {
            auto split = split_indexed_atom(f.atom_name());
            out = split ? split->first + "_" + split->second : f.atom_name();
            break;
        }
        case LtlOp::True: out = "true"; break;
        case LtlOp::False: out = "false"; break;
        case LtlOp::Not:
            out = "!" + print_rec(f.child(0), prec);
            break;
        case LtlOp::Next:
        case LtlOp::Eventually:
        case LtlOp::Globally:
            out = std::string(op_token(f.op())) + " " + print_rec(f.child(0), prec);
            break;
        case LtlOp::And:
        case LtlOp::Or:
            // Parsed left-associatively.
            out = print_rec(f.child(0), prec) + " " + op_token(f.op()) + " " +
                  print_rec(f.child(1), prec + 1);
            break;
        default:
            // Temporal binaries, -> and <-> are right-associative.
            out = print_rec(f.child(0), prec + 1) + " " + op_token(f.op()) + " " +
                  print_rec(f.child(1), prec);
            break;
    }
    if (prec < parent_prec && f.op() != LtlOp::Atom && f.op() != LtlOp::True &&
        f.op() != LtlOp::False) {
        return "(" + out + ")";
    }
    return out;
}

} // namespace

std::string LtlFormula::to_string() const { return print_rec(*this, 0); }

LtlFormula to_nnf(const LtlFormula& f) {
    switch (f.op()) {
        case LtlOp::Atom:
        case LtlOp::True:
        case LtlOp::False:
            return f;
        case LtlOp::Implies:
            return to_nnf(LtlFormula::make_or(LtlFormula::make_not(f.child(0)), f.child(1)));
        case LtlOp::Iff:
            return to_nnf(LtlFormula::make_or(
                LtlFormula::make_and(f.child(0), f.child(1)),
                LtlFormula::make_and(LtlFormula::make_not(f.child(0)),
                                     LtlFormula::make_not(f.child(1)))));
        case LtlOp::And:
            return LtlFormula::make_and(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case LtlOp::Or:
            return LtlFormula::make_or(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case LtlOp::Next:
            return LtlFormula::next(to_nnf(f.child(0)));
        case LtlOp::Until:
            return LtlFormula::until(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case LtlOp::WeakUntil:
            return LtlFormula::weak_until(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case LtlOp::Release:
            return LtlFormula::release(to_nnf(f.child(0)), to_nnf(f.child(1)));
        case LtlOp::Eventually:
            return LtlFormula::eventually(to_nnf(f.child(0)));
        case LtlOp::Globally:
            return LtlFormula::globally(to_nnf(f.child(0)));
        case LtlOp::Not:
            break;
    }
    const LtlFormula& a = f.child(0);
    switch (a.op()) {
        case LtlOp::Atom:
            return f;
        case LtlOp::True:
            return LtlFormula::ff();
        case LtlOp::False:
            return LtlFormula::tt();
        case LtlOp::Not:
            return to_nnf(a.child(0));
        case LtlOp::And:
            return LtlFormula::make_or(to_nnf(LtlFormula::make_not(a.child(0))),
                                       to_nnf(LtlFormula::make_not(a.child(1))));
        case LtlOp::Or:
            return LtlFormula::make_and(to_nnf(LtlFormula::make_not(a.child(0))),
                                        to_nnf(LtlFormula::make_not(a.child(1))));
        case LtlOp::Implies:
            return LtlFormula::make_and(to_nnf(a.child(0)),
                                        to_nnf(LtlFormula::make_not(a.child(1))));
        case LtlOp::Iff:
            return to_nnf(LtlFormula::iff(a.child(0), LtlFormula::make_not(a.child(1))));
        case LtlOp::Next:
            return LtlFormula::next(to_nnf(LtlFormula::make_not(a.child(0))));
        case LtlOp::Until:
            return LtlFormula::release(to_nnf(LtlFormula::make_not(a.child(0))),
                                       to_nnf(LtlFormula::make_not(a.child(1))));
        case LtlOp::Release:
            return LtlFormula::until(to_nnf(LtlFormula::make_not(a.child(0))),
                                     to_nnf(LtlFormula::make_not(a.child(1))));
        case LtlOp::WeakUntil: {
            // !(a W b) = (!b) U (!a & !b)
            LtlFormula na = LtlFormula::make_not(a.child(0));
            LtlFormula nb = LtlFormula::make_not(a.child(1));
            return LtlFormula::until(to_nnf(nb),
                                     LtlFormula::make_and(to_nnf(na), to_nnf(nb)));
        }
        case LtlOp::Eventually:
            return LtlFormula::globally(to_nnf(LtlFormula::make_not(a.child(0))));
        case LtlOp::Globally:
            return LtlFormula::eventually(to_nnf(LtlFormula::make_not(a.child(0))));
    }
    return f;
}

LtlFormula to_core(const LtlFormula& f) {
    using F = LtlFormula;
    switch (f.op()) {
        case LtlOp::Atom:
        case LtlOp::True:
        case LtlOp::False:
            return f;
        case LtlOp::Not:
            return F::make_not(to_core(f.child(0)));
        case LtlOp::And:
            return F::make_and(to_core(f.child(0)), to_core(f.child(1)));
        case LtlOp::Or:
            return F::make_not(F::make_and(F::make_not(to_core(f.child(0))),
                                           F::make_not(to_core(f.child(1)))));
        case LtlOp::Implies:
            return to_core(F::make_or(F::make_not(f.child(0)), f.child(1)));
        case LtlOp::Iff:
            return to_core(F::make_or(F::make_and(f.child(0), f.child(1)),
                                      F::make_and(F::make_not(f.child(0)),
                                                  F::make_not(f.child(1)))));
        case LtlOp::Next:
            return F::next(to_core(f.child(0)));
        case LtlOp::Until:
            return F::until(to_core(f.child(0)), to_core(f.child(1)));
        case LtlOp::Eventually:
            return F::until(F::tt(), to_core(f.child(0)));
        case LtlOp::Globally:
            return F::make_not(F::until(F::tt(), F::make_not(to_core(f.child(0)))));
        case LtlOp::Release:
            // a R b = !(!a U !b)
            return F::make_not(F::until(F::make_not(to_core(f.child(0))),
                                        F::make_not(to_core(f.child(1)))));
        case LtlOp::WeakUntil: {
            // a W b = !((!b) U (!a & !b))
            LtlFormula a = to_core(f.child(0));
            LtlFormula b = to_core(f.child(1));
            return F::make_not(F::until(F::make_not(b),
                                        F::make_and(F::make_not(a), F::make_not(b))));
        }
    }
    return f;
}

std::string indexed_atom(const std::string& prop, const std::string& var) {
    return prop + "@" + var;
}

std::optional<std::pair<std::string, std::string>> split_indexed_atom(const std::string& name) {
    auto pos = name.find('@');
    if (pos == std::string::npos) return std::nullopt;
    return std::make_pair(name.substr(0, pos), name.substr(pos + 1));
}

HyperLtlFormula::HyperLtlFormula(std::vector<std::pair<Quant, TraceVar>> prefix, LtlFormula body)
    : prefix_(std::move(prefix)), body_(std::move(body)) {
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        for (std::size_t j = i + 1; j < prefix_.size(); ++j) {
            if (prefix_[i].second == prefix_[j].second) {
                throw std::invalid_argument("duplicate trace variable " + prefix_[i].second.id);
            }
        }
    }
    for (const auto& a : body_.atom_names()) {
        auto split = split_indexed_atom(a);
        if (!split) throw std::invalid_argument("body atom without trace index: " + a);
        bool bound = false;
        for (const auto& [q, v] : prefix_) {
            (void)q;
            if (v.id == split->second) bound = true;
        }
        if (!bound) throw std::invalid_argument("unbound trace variable " + split->second);
    }
}

std::size_t HyperLtlFormula::universal_count() const {
    std::size_t n = 0;
    for (const auto& [q, v] : prefix_) {
        (void)v;
        if (q == Quant::Forall) ++n;
    }
    return n;
}

std::size_t HyperLtlFormula::existential_count() const {
    return prefix_.size() - universal_count();
}

bool HyperLtlFormula::is_forall_star_exists_star() const {
    bool seen_exists = false;
    for (const auto& [q, v] : prefix_) {
        (void)v;
        if (q == Quant::Exists) {
            seen_exists = true;
        } else if (seen_exists) {
            return false;
        }
    }
    return true;
}

bool HyperLtlFormula::is_forall_exists_star() const {
    return is_forall_star_exists_star() && universal_count() == 1;
}

std::vector<TraceVar> HyperLtlFormula::universal_vars() const {
    std::vector<TraceVar> out;
    for (const auto& [q, v] : prefix_) {
        if (q == Quant::Forall) out.push_back(v);
    }
    return out;
}

std::vector<TraceVar> HyperLtlFormula::existential_vars() const {
    std::vector<TraceVar> out;
    for (const auto& [q, v] : prefix_) {
        if (q == Quant::Exists) out.push_back(v);
    }
    return out;
}

std::vector<std::string> HyperLtlFormula::propositions() const {
    std::set<std::string> props;
    for (const auto& a : body_.atom_names()) {
        if (auto split = split_indexed_atom(a)) props.insert(split->first);
    }
    return {props.begin(), props.end()};
}

bool HyperLtlFormula::operator==(const HyperLtlFormula& other) const {
    return prefix_ == other.prefix_ && body_ == other.body_;
}

std::string HyperLtlFormula::to_string() const {
    std::string out;
    for (const auto& [q, v] : prefix_) {
        out += (q == Quant::Forall ? "forall " : "exists ") + v.id + ". ";
    }
    out += body_.to_string();
    return out;
}

std::string Specification::to_string() const {
    return "ltl: " + ltl.to_string() + "\nhyperltl: " + hyper.to_string() + "\n";
}

std::string to_string(FragmentTag tag) {
    switch (tag) {
        case FragmentTag::XOnly: return "x-only";
        case FragmentTag::SingleEventuality: return "single-eventuality";
        case FragmentTag::EventualityConjunction: return "eventuality-conjunction";
        case FragmentTag::TemporalSafety: return "temporal-safety";
        case FragmentTag::ForallExistsStar: return "forall-exists-star";
        case FragmentTag::General: return "general";
    }
    return "?";
}

bool is_x_only(const LtlFormula& f) {
    if (is_temporal(f.op()) && f.op() != LtlOp::Next) return false;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        if (!is_x_only(f.child(i))) return false;
    }
    return true;
}

namespace {
void flatten_conjunction(const LtlFormula& f, std::vector<LtlFormula>& out) {
    if (f.op() == LtlOp::And) {
        flatten_conjunction(f.child(0), out);
        flatten_conjunction(f.child(1), out);
    } else {
        out.push_back(f);
    }
}
} // namespace

std::optional<EventualitySplit> split_eventuality_conjunction(const LtlFormula& body) {
    std::vector<LtlFormula> conjuncts;
    flatten_conjunction(body, conjuncts);
    EventualitySplit split;
    std::vector<LtlFormula> rest;
    for (const auto& c : conjuncts) {
        if (c.op() == LtlOp::Eventually && is_x_only(c.child(0))) {
            split.eventualities.push_back(c.child(0));
        } else if (!c.contains_temporal()) {
            rest.push_back(c);
        } else {
            return std::nullopt;
        }
    }
    if (split.eventualities.empty()) return std::nullopt;
    if (!rest.empty()) split.propositional_rest = LtlFormula::conj_all(rest);
    return split;
}

} // namespace hypersat
