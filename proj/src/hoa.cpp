#include <cctype>
#include <map>
#include <sstream>

#include "hypersat/nba.hpp"

namespace hypersat {

std::string export_hoa(const SymbolicNba& a, const std::string& name) {
    // Guards are rendered over AP indices via satisfying-letter expansion per
    // edge support; the result uses only t, f, integers, !, &, |.
    std::ostringstream out;
    out << "HOA: v1\n";
    if (!name.empty()) out << "name: \"" << name << "\"\n";
    out << "States: " << a.num_states << "\n";
    for (auto q : a.initial) out << "Start: " << q << "\n";
    out << "AP: " << a.atoms.size();
    for (const auto& n : a.atoms.names()) out << " \"" << n << "\"";
    out << "\n";
    out << "acc-name: Buchi\n";
    out << "Acceptance: 1 Inf(0)\n";
    out << "properties: trans-labels explicit-labels state-acc\n";
    out << "--BODY--\n";
    auto adj = a.adjacency();
    for (std::size_t q = 0; q < a.num_states; ++q) {
        out << "State: " << q;
        if (a.is_accepting(q)) out << " {0}";
        out << "\n";
        for (auto ei : adj[q]) {
            const auto& e = a.edges[ei];
            // Disjunction of minterms over the guard's support.
            std::uint32_t sup = e.guard.support();
            std::vector<std::size_t> vars;
            for (std::size_t i = 0; i < a.atoms.size(); ++i) {
                if ((sup >> i) & 1u) vars.push_back(i);
            }
            std::string expr;
            if (vars.empty()) {
                expr = e.guard.eval(0) ? "t" : "f";
            } else {
                std::vector<std::string> terms;
                for (std::uint64_t m = 0; m < (std::uint64_t{1} << vars.size()); ++m) {
                    Letter l = 0;
                    for (std::size_t i = 0; i < vars.size(); ++i) {
                        if ((m >> i) & 1u) l |= (1u << vars[i]);
                    }
                    if (!e.guard.eval(l)) continue;
                    std::string term;
                    for (std::size_t i = 0; i < vars.size(); ++i) {
                        if (!term.empty()) term += "&";
                        if (!((m >> i) & 1u)) term += "!";
                        term += std::to_string(vars[i]);
                    }
                    terms.push_back(term);
                }
                if (terms.empty()) {
                    expr = "f";
                } else {
                    for (std::size_t i = 0; i < terms.size(); ++i) {
                        if (i) expr += " | ";
                        expr += terms[i];
                    }
                }
            }
            if (expr == "f") continue;
            out << "  [" << expr << "] " << e.dst << "\n";
        }
    }
    out << "--END--\n";
    return out.str();
}

namespace {

class HoaLexer {
public:
    explicit HoaLexer(const std::string& text) : text_(text) {}

    std::string next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ >= text_.size()) return "";
        char c = text_[pos_];
        if (c == '"') {
            std::size_t end = text_.find('"', pos_ + 1);
            if (end == std::string::npos) throw std::runtime_error("HOA: unterminated string");
            std::string s = text_.substr(pos_, end - pos_ + 1);
            pos_ = end + 1;
            return s;
        }
        if (c == '[' || c == ']' || c == '{' || c == '}' || c == '(' || c == ')' || c == '!' ||
            c == '&' || c == '|') {
            ++pos_;
            return std::string(1, c);
        }
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
               std::string("[]{}()!&|\"").find(text_[end]) == std::string::npos) {
            ++end;
        }
        std::string tok = text_.substr(pos_, end - pos_);
        pos_ = end;
        return tok;
    }

    std::string peek() {
        std::size_t save = pos_;
        std::string t = next();
        pos_ = save;
        return t;
    }

    bool at_end() { return peek().empty(); }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

/// Recursive descent over HOA label expressions: | over & over unary.
struct LabelParser {
    HoaLexer& lex;
    std::size_t ap_count;

    Prop parse() { return parse_or(); }

    Prop parse_or() {
        Prop left = parse_and();
        while (lex.peek() == "|") {
            lex.next();
            left = Prop::disj(left, parse_and());
        }
        return left;
    }

    Prop parse_and() {
        Prop left = parse_unary();
        while (lex.peek() == "&") {
            lex.next();
            left = Prop::conj(left, parse_unary());
        }
        return left;
    }

    Prop parse_unary() {
        std::string t = lex.next();
        if (t == "!") return Prop::negate(parse_unary());
        if (t == "(") {
            Prop inner = parse_or();
            if (lex.next() != ")") throw std::runtime_error("HOA: expected ')' in label");
            return inner;
        }
        if (t == "t") return Prop::tt();
        if (t == "f") return Prop::ff();
        std::size_t idx = std::stoul(t);
        if (idx >= ap_count) throw std::runtime_error("HOA: AP index out of range");
        return Prop::var(idx);
    }
};

} // namespace

SymbolicNba import_hoa(const std::string& text) {
    HoaLexer lex(text);
    if (lex.next() != "HOA:") throw std::runtime_error("HOA: missing header");
    if (lex.next() != "v1") throw std::runtime_error("HOA: unsupported version");

    SymbolicNba a;
    bool acceptance_ok = false;
    bool states_known = false;

    while (true) {
        std::string tok = lex.next();
        if (tok.empty()) throw std::runtime_error("HOA: missing --BODY--");
        if (tok == "--BODY--") break;
        if (tok == "States:") {
            a.num_states = std::stoul(lex.next());
            states_known = true;
        } else if (tok == "Start:") {
            a.initial.push_back(std::stoul(lex.next()));
        } else if (tok == "AP:") {
            std::size_t n = std::stoul(lex.next());
            std::vector<std::string> names;
            for (std::size_t i = 0; i < n; ++i) {
                std::string s = lex.next();
                if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
                    throw std::runtime_error("HOA: malformed AP name");
                }
                names.push_back(s.substr(1, s.size() - 2));
            }
            a.atoms = AtomSet(names);
        } else if (tok == "Acceptance:") {
            std::string k = lex.next();
            std::string cond = lex.next();
            std::string paren = lex.next();
            std::string idx = lex.next();
            std::string close = lex.next();
            if (k != "1" || cond != "Inf" || paren != "(" || idx != "0" || close != ")") {
                throw std::runtime_error(
                    "HOA: unsupported acceptance '" + k + " " + cond +
                    "' (only state-based Buchi '1 Inf(0)' is supported)");
            }
            acceptance_ok = true;
        } else if (tok == "acc-name:") {
            std::string nm = lex.next();
            if (nm != "Buchi") {
                throw std::runtime_error("HOA: unsupported acc-name '" + nm + "'");
            }
        } else if (tok == "name:" || tok == "tool:") {
            lex.next();
        } else if (tok == "properties:") {
            while (!lex.peek().empty() && lex.peek().find(':') == std::string::npos &&
                   lex.peek() != "--BODY--") {
                lex.next();
            }
        } else {
            throw std::runtime_error("HOA: unsupported header item '" + tok + "'");
        }
    }
    if (!acceptance_ok) throw std::runtime_error("HOA: missing Acceptance header");
    if (!states_known) throw std::runtime_error("HOA: missing States header");

    std::size_t current = 0;
    bool have_state = false;
    while (true) {
        std::string tok = lex.next();
        if (tok == "--END--") break;
        if (tok.empty()) throw std::runtime_error("HOA: missing --END--");
        if (tok == "State:") {
            current = std::stoul(lex.next());
            have_state = true;
            if (current >= a.num_states) throw std::runtime_error("HOA: state out of range");
            if (lex.peek() == "{") {
                lex.next();
                while (lex.peek() != "}") {
                    if (lex.next() != "0") {
                        throw std::runtime_error("HOA: unsupported acceptance set on state");
                    }
                    a.accepting.push_back(current);
                }
                lex.next();
            }
        } else if (tok == "[") {
            if (!have_state) throw std::runtime_error("HOA: edge before first state");
            LabelParser lp{lex, a.atoms.size()};
            Prop g = lp.parse();
            if (lex.next() != "]") throw std::runtime_error("HOA: expected ']' after label");
            std::size_t dst = std::stoul(lex.next());
            if (dst >= a.num_states) throw std::runtime_error("HOA: edge target out of range");
            a.edges.push_back({current, g, dst});
        } else {
            throw std::runtime_error("HOA: unsupported body item '" + tok +
                                     "' (implicit labels are not supported)");
        }
    }
    a.check_valid();
    return a;
}

} // namespace hypersat
