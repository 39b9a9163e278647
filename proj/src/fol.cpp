#include "hypersat/fol.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include "hypersat/eval.hpp"
#include "hypersat/ltl2nba.hpp"

namespace hypersat {

FolFormula encode_temporal_safety(const Specification& s, const FolOptions& opts) {
    std::vector<TraceVar> vars;
    std::vector<Quant> quants;
    for (const auto& [q, v] : s.hyper.prefix()) {
        quants.push_back(q);
        vars.push_back(v);
    }
    AtomSet indexed = indexed_atom_set(s.ap, vars);
    if (indexed.size() > opts.atom_cap) {
        throw ResourceLimitError("fol encoding alphabet cap", indexed.size(), opts.atom_cap);
    }

    SymbolicNba body_aut = reduce(translate(s.hyper.body(), indexed));
    if (!is_safety_language(body_aut)) {
        throw std::invalid_argument("fol encoder: hyper body is not a safety language");
    }
    if (s.ltl.op() != LtlOp::True) {
        SymbolicNba psi_aut = reduce(translate(s.ltl, s.ap));
        if (!is_safety_language(psi_aut)) {
            throw std::invalid_argument("fol encoder: trace property is not safety");
        }
    }

    // Merge the trace property onto every position: body := body /\ /\_pi psi_pi.
    LtlFormula merged = s.hyper.body();
    if (s.ltl.op() != LtlOp::True) {
        for (const auto& v : vars) {
            std::vector<std::pair<std::string, std::string>> ren;
            for (const auto& n : s.ap.names()) ren.emplace_back(n, indexed_atom(n, v.id));
            merged = LtlFormula::make_and(merged, s.ltl.rename_atoms(ren));
        }
    }

    SafetyAutomaton sa = safety_closure(translate(merged, indexed));

    FolFormula f;
    f.prefix = quants;
    for (const auto& v : vars) f.trace_var_names.push_back(v.id);
    f.plain_ap = s.ap;
    f.indexed_ap = indexed;
    if (sa.num_states == 0 || !sa.initial) {
        f.falsum = true;
        return f;
    }
    f.num_states = sa.num_states;
    f.initial_state = *sa.initial;
    f.transitions.resize(sa.num_states);
    const std::size_t letters = indexed.letter_count();
    for (const auto& e : sa.edges) {
        for (Letter l = 0; l < letters; ++l) {
            if (e.guard.eval(l)) f.transitions[e.src].push_back({l, e.dst});
        }
    }
    return f;
}

namespace {

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            out += '_';
        }
    }
    if (out.empty() || !std::islower(static_cast<unsigned char>(out[0]))) {
        out = "p" + out;
    }
    return out;
}

} // namespace

std::string emit_tptp(const FolFormula& f) {
    std::ostringstream out;
    out << "% two-sorted encoding relativized into unsorted FOF\n";
    out << "fof(sort_trace_nonempty, axiom, ?[X]: isTrace(X)).\n";
    out << "fof(sort_time_nonempty, axiom, ?[I]: isTimePoint(I)).\n";
    out << "fof(i0_sort, axiom, isTimePoint(i0)).\n";
    if (f.falsum) {
        out << "fof(theta, axiom, $false).\n";
        return out.str();
    }

    std::vector<std::string> xs;
    for (std::size_t i = 0; i < f.prefix.size(); ++i) {
        xs.push_back("X" + std::to_string(i + 1));
    }
    auto state_pred = [&](std::size_t q, const std::string& time) {
        std::string args;
        for (const auto& x : xs) args += x + ",";
        return "state_q" + std::to_string(q) + "(" + args + time + ")";
    };

    // phi_succ and phi_non-empty.
    std::string phi_succ =
        "(![I]: (isTimePoint(I) => ?[J]: (isTimePoint(J) & succ(I,J))))";
    std::string phi_nonempty = "(?[Y]: isTrace(Y))";

    // rho_q: at every time point with a successor, some transition applies.
    std::vector<std::string> rhos;
    for (std::size_t q = 0; q < f.num_states; ++q) {
        std::ostringstream rho;
        rho << "(![I,J]: ((isTimePoint(I) & isTimePoint(J) & " << state_pred(q, "I")
            << " & succ(I,J)) => (";
        if (f.transitions[q].empty()) {
            rho << "$false";
        } else {
            bool first_disjunct = true;
            for (const auto& t : f.transitions[q]) {
                if (!first_disjunct) rho << " | ";
                first_disjunct = false;
                rho << "(";
                bool first_lit = true;
                for (std::size_t ai = 0; ai < f.indexed_ap.size(); ++ai) {
                    auto split = split_indexed_atom(f.indexed_ap.name(ai));
                    if (!split) continue;
                    std::size_t var_pos = 0;
                    for (std::size_t vi = 0; vi < f.trace_var_names.size(); ++vi) {
                        if (f.trace_var_names[vi] == split->second) var_pos = vi;
                    }
                    if (!first_lit) rho << " & ";
                    first_lit = false;
                    if (!letter_has(t.letter, ai)) rho << "~";
                    rho << "p_" << sanitize(split->first) << "(" << xs[var_pos] << ",I)";
                }
                if (first_lit) rho << "$true";
                rho << " & " << state_pred(t.dst, "J") << ")";
            }
        }
        rho << ")))";
        rhos.push_back(rho.str());
    }

    std::ostringstream body;
    body << phi_succ << " & " << phi_nonempty;
    for (const auto& r : rhos) body << " & " << r;
    body << " & " << state_pred(f.initial_state, "i0");

    std::string theta = body.str();
    for (std::size_t i = f.prefix.size(); i-- > 0;) {
        if (f.prefix[i] == Quant::Forall) {
            theta = "![" + xs[i] + "]: (isTrace(" + xs[i] + ") => (" + theta + "))";
        } else {
            theta = "?[" + xs[i] + "]: (isTrace(" + xs[i] + ") & (" + theta + "))";
        }
    }
    out << "fof(theta, axiom, " << theta << ").\n";
    return out.str();
}

namespace {

/// Tokenizer and recursive-descent checker for the emitted FOF subset.
struct TptpChecker {
    const std::string& text;
    std::size_t pos = 0;
    std::string err;

    void skip_ws() {
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else if (text[pos] == '%') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool literal(const std::string& s) {
        skip_ws();
        if (text.compare(pos, s.size(), s) == 0) {
            pos += s.size();
            return true;
        }
        return false;
    }

    bool ident(std::string* out = nullptr, bool upper = false) {
        skip_ws();
        std::size_t start = pos;
        if (pos >= text.size()) return false;
        char c = text[pos];
        bool is_upper = std::isupper(static_cast<unsigned char>(c));
        bool is_lower = std::islower(static_cast<unsigned char>(c));
        if (upper ? !is_upper : !is_lower) return false;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        if (out) *out = text.substr(start, pos - start);
        return true;
    }

    bool fail(const std::string& message) {
        if (err.empty()) err = message + " at offset " + std::to_string(pos);
        return false;
    }

    bool formula() { return iff_formula(); }

    bool iff_formula() {
        if (!or_formula()) return false;
        skip_ws();
        while (literal("<=>") || literal("=>")) {
            if (!or_formula()) return false;
            skip_ws();
        }
        return true;
    }

    bool or_formula() {
        if (!and_formula()) return false;
        skip_ws();
        while (pos < text.size() && text[pos] == '|') {
            ++pos;
            if (!and_formula()) return false;
            skip_ws();
        }
        return true;
    }

    bool and_formula() {
        if (!unary_formula()) return false;
        skip_ws();
        while (pos < text.size() && text[pos] == '&') {
            ++pos;
            if (!unary_formula()) return false;
            skip_ws();
        }
        return true;
    }

    bool unary_formula() {
        skip_ws();
        if (literal("~")) return unary_formula();
        if (literal("![") || literal("?[")) {
            std::string v;
            if (!ident(&v, true)) return fail("expected variable");
            while (literal(",")) {
                if (!ident(&v, true)) return fail("expected variable");
            }
            if (!literal("]")) return fail("expected ']'");
            if (!literal(":")) return fail("expected ':'");
            return unary_formula();
        }
        if (literal("(")) {
            if (!formula()) return false;
            if (!literal(")")) return fail("expected ')'");
            return true;
        }
        if (literal("$false") || literal("$true")) return true;
        std::string name;
        if (!ident(&name)) return fail("expected predicate");
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            while (true) {
                skip_ws();
                std::string arg;
                if (!ident(&arg, true) && !ident(&arg, false)) {
                    return fail("expected term");
                }
                skip_ws();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                break;
            }
            if (!literal(")")) return fail("expected ')' after arguments");
        }
        return true;
    }

    bool document() {
        skip_ws();
        bool any = false;
        while (pos < text.size()) {
            if (!literal("fof(")) return fail("expected fof(");
            std::string name;
            if (!ident(&name)) return fail("expected formula name");
            if (!literal(",")) return fail("expected ','");
            std::string role;
            if (!ident(&role)) return fail("expected role");
            if (!literal(",")) return fail("expected ','");
            if (!formula()) return fail("malformed formula");
            if (!literal(")")) return fail("expected ')'");
            if (!literal(".")) return fail("expected '.'");
            any = true;
            skip_ws();
        }
        return any;
    }
};

} // namespace

bool validate_tptp(const std::string& text, std::string* error) {
    TptpChecker c{text};
    bool ok = c.document();
    if (!ok && error) *error = c.err.empty() ? "malformed document" : c.err;
    return ok;
}

std::string default_prover_command() {
    const char* env = std::getenv("HYPERSAT_PROVER");
    return env ? env : "";
}

ProverResult check_with_prover(const std::string& document,
                               const std::string& command_template,
                               double timeout_seconds) {
    ProverResult result;
    if (timeout_seconds <= 0) {
        result.raw_output = "timeout is zero; prover not invoked";
        return result;
    }
    if (command_template.empty()) {
        result.raw_output = "no prover command configured";
        return result;
    }
    // Write the document to a temporary file.
    std::string path = "/tmp/hypersat_fol_XXXXXX";
    {
        std::vector<char> buf(path.begin(), path.end());
        buf.push_back('\0');
        int fd = mkstemp(buf.data());
        if (fd < 0) {
            result.raw_output = "cannot create temporary file";
            return result;
        }
        path.assign(buf.data());
        std::ofstream out(path);
        out << document;
        close(fd);
    }
    std::string cmd = command_template;
    auto replace_all = [&](const std::string& from, const std::string& to) {
        std::size_t at = 0;
        while ((at = cmd.find(from, at)) != std::string::npos) {
            cmd.replace(at, from.size(), to);
            at += to.size();
        }
    };
    replace_all("{file}", path);
    replace_all("{timeout}", std::to_string(static_cast<long>(timeout_seconds)));

    // The command goes through a script file so its own quoting survives.
    std::string script = path + ".sh";
    {
        std::ofstream out(script);
        out << cmd << "\n";
    }

    // Enforce the wall clock with a hard kill; partial output is discarded
    // when the child is killed before printing a status line.
    std::string full = "timeout -k 1 " + std::to_string(static_cast<long>(timeout_seconds) + 1) +
                       " sh " + script + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) {
        std::remove(path.c_str());
        std::remove(script.c_str());
        result.raw_output = "failed to spawn prover";
        return result;
    }
    char buf[4096];
    std::string output;
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) {
        output.append(buf, n);
        if (output.size() > (1u << 20)) break;
    }
    pclose(pipe);
    std::remove(path.c_str());
    std::remove(script.c_str());
    result.raw_output = output;

    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
        auto at = line.find("SZS status ");
        if (at == std::string::npos) continue;
        std::istringstream rest(line.substr(at + 11));
        std::string status;
        rest >> status;
        if (status == "Theorem" || status == "Unsatisfiable") {
            result.status = ProverStatus::Unsatisfiable;
        } else if (status == "Satisfiable" || status == "CounterSatisfiable") {
            result.status = ProverStatus::Satisfiable;
        }
        break;
    }
    return result;
}

} // namespace hypersat
