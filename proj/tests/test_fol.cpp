#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypersat/fol.hpp"
#include "hypersat/parser.hpp"

using namespace hypersat;
using F = LtlFormula;

namespace {

Specification spec_of(const std::string& psi, const std::string& hyper,
                      const AtomSet& ap) {
    Specification s;
    s.ap = ap;
    s.ltl = parse_ltl(psi, ap);
    s.hyper = parse_hyper(hyper, ap);
    return s;
}

} // namespace

TEST_CASE("encode: forall p. G a_p") {
    AtomSet ap({"a"});
    FolFormula f = encode_temporal_safety(spec_of("true", "forall p. G a_p", ap));
    CHECK(!f.falsum);
    CHECK(f.prefix.size() == 1);
    CHECK(f.prefix[0] == Quant::Forall);
    CHECK(f.plain_ap.size() == 1);
    CHECK(f.num_states >= 1);
    std::string doc = emit_tptp(f);
    CHECK(doc.find("fof(theta, axiom,") != std::string::npos);
    CHECK(doc.find("succ(") != std::string::npos);
    CHECK(doc.find("p_a(") != std::string::npos);
    CHECK(doc.find("state_q") != std::string::npos);
    std::string err;
    CHECK(validate_tptp(doc, &err));
}

TEST_CASE("encode: contradictory body becomes falsum") {
    AtomSet ap({"a"});
    FolFormula f = encode_temporal_safety(spec_of("true", "forall p. a_p & !a_p", ap));
    CHECK(f.falsum);
    std::string doc = emit_tptp(f);
    CHECK(doc.find("fof(theta, axiom, $false).") != std::string::npos);
    CHECK(validate_tptp(doc));
}

TEST_CASE("encode: transition disjunction counts the minterm edges") {
    AtomSet ap({"a"});
    Specification s = spec_of("true", "forall p. exists q. G (a_p <-> a_q)", ap);
    FolFormula f = encode_temporal_safety(s);
    CHECK(!f.falsum);
    // Each reachable state has at least one letter-level transition; the total
    // transition count equals the safety automaton's edge count after minterm
    // expansion over both indexed atoms.
    std::size_t total = 0;
    for (const auto& ts : f.transitions) total += ts.size();
    CHECK(total >= 2);
    for (const auto& ts : f.transitions) {
        for (const auto& t : ts) {
            // G(a_p <-> a_q): every surviving letter agrees on the two bits.
            bool p_bit = letter_has(t.letter, 0);
            bool q_bit = letter_has(t.letter, 1);
            CHECK(p_bit == q_bit);
        }
    }
    CHECK(validate_tptp(emit_tptp(f)));
}

TEST_CASE("encode rejects non-safety inputs") {
    AtomSet ap({"a"});
    CHECK_THROWS_AS(encode_temporal_safety(spec_of("true", "forall p. F a_p", ap)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        encode_temporal_safety(spec_of("F a", "forall p. G a_p", ap)),
        std::invalid_argument);
}

TEST_CASE("emission is deterministic") {
    AtomSet ap({"a"});
    Specification s = spec_of("G a", "forall p. exists q. G (a_p <-> a_q)", ap);
    std::string a = emit_tptp(encode_temporal_safety(s));
    std::string b = emit_tptp(encode_temporal_safety(s));
    CHECK(a == b);
}

TEST_CASE("tptp validator rejects malformed documents") {
    CHECK(!validate_tptp(""));
    CHECK(!validate_tptp("fof(x, axiom, p & )."));
    CHECK(validate_tptp("fof(x, axiom, ![X]: (p(X) => q(X))).\n"));
}

TEST_CASE("prover client parses SZS statuses through stub provers") {
    std::string doc = "fof(theta, axiom, $false).\n";
    {
        ProverResult r = check_with_prover(doc, "echo 'SZS status Unsatisfiable'", 10);
        CHECK(r.status == ProverStatus::Unsatisfiable);
    }
    {
        ProverResult r = check_with_prover(doc, "echo '% SZS status Satisfiable for {file}'", 10);
        CHECK(r.status == ProverStatus::Satisfiable);
    }
    {
        ProverResult r = check_with_prover(doc, "echo 'SZS status Theorem'", 10);
        CHECK(r.status == ProverStatus::Unsatisfiable);
    }
    {
        ProverResult r = check_with_prover(doc, "echo 'no status here'", 10);
        CHECK(r.status == ProverStatus::Unknown);
        CHECK(!r.raw_output.empty());
    }
    {
        // Timeout zero: the prover is not even invoked.
        ProverResult r = check_with_prover(doc, "echo 'SZS status Theorem'", 0);
        CHECK(r.status == ProverStatus::Unknown);
    }
    {
        // The {file} placeholder points at the document.
        ProverResult r = check_with_prover(doc, "grep -q '\\$false' {file} && echo 'SZS status Unsatisfiable'", 10);
        CHECK(r.status == ProverStatus::Unsatisfiable);
    }
    {
        // A hanging prover is killed by the timeout.
        ProverResult r = check_with_prover(doc, "sleep 30 && echo 'SZS status Theorem'", 1);
        CHECK(r.status == ProverStatus::Unknown);
    }
}

TEST_CASE("golden TPTP for forall p. G a_p") {
    AtomSet ap({"a"});
    Specification s = spec_of("true", "forall p. G a_p", ap);
    std::ifstream in(std::string(HYPERSAT_SOURCE_DIR) + "/tests/golden/forall_g_a.p");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(emit_tptp(encode_temporal_safety(s)) == buf.str());
}
