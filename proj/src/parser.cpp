#include "hypersat/parser.hpp"

#include <cctype>
#include <functional>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace hypersat {

namespace {

enum class Tok {
    Ident,
    True,
    False,
    Forall,
    Exists,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Finally,
    Globally,
    Until,
    WeakUntil,
    Release,
    LParen,
    RParen,
    Dot,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Tok::End, "", start};
            return;
        }
        char c = text_[pos_];
        auto two = text_.substr(pos_, 2);
        auto three = text_.substr(pos_, 3);
        if (three == "<->") {
            pos_ += 3;
            current_ = {Tok::Iff, three, start};
            return;
        }
        if (two == "->") {
            pos_ += 2;
            current_ = {Tok::Implies, two, start};
            return;
        }
        switch (c) {
            case '!': ++pos_; current_ = {Tok::Not, "!", start}; return;
            case '&': ++pos_; current_ = {Tok::And, "&", start}; return;
            case '|': ++pos_; current_ = {Tok::Or, "|", start}; return;
            case '(': ++pos_; current_ = {Tok::LParen, "(", start}; return;
            case ')': ++pos_; current_ = {Tok::RParen, ")", start}; return;
            case '.': ++pos_; current_ = {Tok::Dot, ".", start}; return;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
                ++end;
            }
            std::string word = text_.substr(pos_, end - pos_);
            pos_ = end;
            if (word == "true") current_ = {Tok::True, word, start};
            else if (word == "false") current_ = {Tok::False, word, start};
            else if (word == "forall") current_ = {Tok::Forall, word, start};
            else if (word == "exists") current_ = {Tok::Exists, word, start};
            else if (word == "X") current_ = {Tok::Next, word, start};
            else if (word == "F") current_ = {Tok::Finally, word, start};
            else if (word == "G") current_ = {Tok::Globally, word, start};
            else if (word == "U") current_ = {Tok::Until, word, start};
            else if (word == "W") current_ = {Tok::WeakUntil, word, start};
            else if (word == "R") current_ = {Tok::Release, word, start};
            else current_ = {Tok::Ident, word, start};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_{Tok::End, "", 0};
};

/// Shared recursive-descent core. Atom resolution is pluggable so the same
/// grammar serves plain LTL and hyper bodies.
class Parser {
public:
    Parser(Lexer& lex, std::function<LtlFormula(const Token&)> atom_handler)
        : lex_(lex), atom_handler_(std::move(atom_handler)) {}

    LtlFormula parse_formula() { return parse_iff(); }

private:
    LtlFormula parse_iff() {
        LtlFormula left = parse_implies();
        if (lex_.peek().kind == Tok::Iff) {
            lex_.take();
            return LtlFormula::iff(left, parse_iff());
        }
        return left;
    }

    LtlFormula parse_implies() {
        LtlFormula left = parse_or();
        if (lex_.peek().kind == Tok::Implies) {
            lex_.take();
            return LtlFormula::implies(left, parse_implies());
        }
        return left;
    }

    LtlFormula parse_or() {
        LtlFormula left = parse_and();
        while (lex_.peek().kind == Tok::Or) {
            lex_.take();
            left = LtlFormula::make_or(left, parse_and());
        }
        return left;
    }

    LtlFormula parse_and() {
        LtlFormula left = parse_temporal_binary();
        while (lex_.peek().kind == Tok::And) {
            lex_.take();
            left = LtlFormula::make_and(left, parse_temporal_binary());
        }
        return left;
    }

    LtlFormula parse_temporal_binary() {
        LtlFormula left = parse_unary();
        Tok k = lex_.peek().kind;
        if (k == Tok::Until || k == Tok::WeakUntil || k == Tok::Release) {
            lex_.take();
            LtlFormula right = parse_temporal_binary();
            if (k == Tok::Until) return LtlFormula::until(left, right);
            if (k == Tok::WeakUntil) return LtlFormula::weak_until(left, right);
            return LtlFormula::release(left, right);
        }
        return left;
    }

    LtlFormula parse_unary() {
        Tok k = lex_.peek().kind;
        switch (k) {
            case Tok::Not: lex_.take(); return LtlFormula::make_not(parse_unary());
            case Tok::Next: lex_.take(); return LtlFormula::next(parse_unary());
            case Tok::Finally: lex_.take(); return LtlFormula::eventually(parse_unary());
            case Tok::Globally: lex_.take(); return LtlFormula::globally(parse_unary());
            default: return parse_primary();
        }
    }

    LtlFormula parse_primary() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Tok::True: lex_.take(); return LtlFormula::tt();
            case Tok::False: lex_.take(); return LtlFormula::ff();
            case Tok::LParen: {
                lex_.take();
                LtlFormula inner = parse_iff();
                if (lex_.peek().kind != Tok::RParen) {
                    throw ParseError("expected ')'", lex_.peek().pos);
                }
                lex_.take();
                return inner;
            }
            case Tok::Ident:
                lex_.take();
                return atom_handler_(t);
            default:
                throw ParseError("expected formula", t.pos);
        }
    }

    Lexer& lex_;
    std::function<LtlFormula(const Token&)> atom_handler_;
};

void expect_end(Lexer& lex) {
    if (lex.peek().kind != Tok::End) {
        throw ParseError("unexpected trailing input '" + lex.peek().text + "'", lex.peek().pos);
    }
}

} // namespace

LtlFormula parse_ltl(const std::string& text, const AtomSet& ap) {
    Lexer lex(text);
    Parser parser(lex, [&ap](const Token& t) {
        if (!ap.contains(t.text)) {
            throw ParseError("unknown atom '" + t.text + "'", t.pos);
        }
        return LtlFormula::atom(t.text);
    });
    LtlFormula f = parser.parse_formula();
    expect_end(lex);
    return f;
}

HyperLtlFormula parse_hyper(const std::string& text, const AtomSet& ap) {
    Lexer lex(text);
    std::vector<std::pair<Quant, TraceVar>> prefix;
    while (lex.peek().kind == Tok::Forall || lex.peek().kind == Tok::Exists) {
        Quant q = lex.take().kind == Tok::Forall ? Quant::Forall : Quant::Exists;
        if (lex.peek().kind != Tok::Ident) {
            throw ParseError("expected trace variable", lex.peek().pos);
        }
        Token var = lex.take();
        if (lex.peek().kind != Tok::Dot) {
            throw ParseError("expected '.' after trace variable", lex.peek().pos);
        }
        lex.take();
        prefix.emplace_back(q, TraceVar{var.text});
    }
    if (prefix.empty()) {
        throw ParseError("expected quantifier prefix", lex.peek().pos);
    }

    auto resolve_atom = [&](const Token& t) {
        // An indexed atom a_p splits at an underscore into a declared
        // proposition and a bound trace variable; the rightmost valid split wins.
        const std::string& word = t.text;
        for (std::size_t i = word.size(); i-- > 0;) {
            if (word[i] != '_') continue;
            std::string prop = word.substr(0, i);
            std::string var = word.substr(i + 1);
            if (prop.empty() || var.empty()) continue;
            bool bound = false;
            for (const auto& [q, v] : prefix) {
                (void)q;
                if (v.id == var) bound = true;
            }
            if (!bound) continue;
            if (!ap.contains(prop)) {
                throw ParseError("unknown atom '" + prop + "'", t.pos);
            }
            return LtlFormula::atom(indexed_atom(prop, var));
        }
        // No split against a bound variable; report the most useful error.
        auto pos = word.rfind('_');
        if (pos != std::string::npos && pos + 1 < word.size()) {
            throw ParseError("unbound trace variable '" + word.substr(pos + 1) + "'", t.pos);
        }
        throw ParseError("atom '" + word + "' lacks a trace index", t.pos);
    };

    Parser parser(lex, resolve_atom);
    LtlFormula body = parser.parse_formula();
    expect_end(lex);
    return HyperLtlFormula(std::move(prefix), std::move(body));
}

namespace {

/// Collects candidate atom names for AP inference: identifiers that are not
/// trace variables of the hyper prefix.
void collect_candidate_atoms(const std::string& text, bool hyper,
                             std::set<std::string>& atoms) {
    Lexer lex(text);
    std::set<std::string> trace_vars;
    if (hyper) {
        while (lex.peek().kind == Tok::Forall || lex.peek().kind == Tok::Exists) {
            lex.take();
            if (lex.peek().kind == Tok::Ident) trace_vars.insert(lex.take().text);
            if (lex.peek().kind == Tok::Dot) lex.take();
        }
    }
    while (lex.peek().kind != Tok::End) {
        Token t = lex.take();
        if (t.kind != Tok::Ident) continue;
        if (!hyper) {
            atoms.insert(t.text);
            continue;
        }
        for (std::size_t i = t.text.size(); i-- > 0;) {
            if (t.text[i] != '_') continue;
            std::string prop = t.text.substr(0, i);
            std::string var = t.text.substr(i + 1);
            if (!prop.empty() && trace_vars.count(var)) {
                atoms.insert(prop);
                break;
            }
        }
    }
}

} // namespace

Specification parse_specification(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string ltl_text;
    std::string hyper_text;
    int section = 0; // 0 none, 1 ltl, 2 hyperltl
    while (std::getline(in, line)) {
        auto strip = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
            return s;
        };
        std::string stripped = strip(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (stripped.rfind("ltl:", 0) == 0) {
            section = 1;
            ltl_text += stripped.substr(4) + "\n";
        } else if (stripped.rfind("hyperltl:", 0) == 0) {
            section = 2;
            hyper_text += stripped.substr(9) + "\n";
        } else if (section == 1) {
            ltl_text += stripped + "\n";
        } else if (section == 2) {
            hyper_text += stripped + "\n";
        } else {
            throw ParseError("specification must start with an 'ltl:' or 'hyperltl:' section", 0);
        }
    }
    if (hyper_text.empty()) {
        throw ParseError("missing 'hyperltl:' section", 0);
    }
    if (ltl_text.empty()) ltl_text = "true";

    std::set<std::string> atom_names;
    collect_candidate_atoms(ltl_text, false, atom_names);
    collect_candidate_atoms(hyper_text, true, atom_names);
    AtomSet ap(std::vector<std::string>(atom_names.begin(), atom_names.end()));

    Specification s;
    s.ap = ap;
    s.ltl = parse_ltl(ltl_text, ap);
    s.hyper = parse_hyper(hyper_text, ap);
    return s;
}

Specification parse_specification_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open specification file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_specification(buf.str());
}

} // namespace hypersat
