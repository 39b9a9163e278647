#pragma once

#include <string>
#include <vector>

#include "hypersat/formula.hpp"
#include "hypersat/nba.hpp"

namespace hypersat {

/// Two-sorted first-order rendering of a temporally safe specification:
/// sorts Trace and TimePoint, constant i0, Succ/2, P_a/2 per atom, and
/// State_q/(n+1) per safety-automaton state.
struct FolFormula {
    bool falsum = false; // empty-automaton convention

    std::vector<Quant> prefix;                  // quantifiers over Trace
    std::vector<std::string> trace_var_names;   // one per prefix position
    AtomSet plain_ap;                           // AP (P_a predicates)
    std::size_t num_states = 0;                 // State_q predicates
    std::size_t initial_state = 0;

    struct Transition {
        Letter letter; // over the indexed alphabet
        std::size_t dst;
    };
    std::vector<std::vector<Transition>> transitions; // per source state
    AtomSet indexed_ap;                               // alphabet of `letter`
};

struct FolOptions {
    std::size_t atom_cap = 12; // minterm expansion bound on the indexed alphabet
};

/// Prop 3.8 / two-sorted translation. Requires the hyper body and the trace
/// property to be safety languages; the trace property is merged into the
/// body on every trace position first.
FolFormula encode_temporal_safety(const Specification& s, const FolOptions& opts = {});

/// TPTP FOF rendering with sorts relativized through guard predicates.
/// Deterministic for deterministic input.
std::string emit_tptp(const FolFormula& f);

/// Validates that a document conforms to the emitted TPTP FOF subset.
bool validate_tptp(const std::string& text, std::string* error = nullptr);

enum class ProverStatus { Satisfiable, Unsatisfiable, Unknown };

struct ProverResult {
    ProverStatus status = ProverStatus::Unknown;
    std::string raw_output;
};

/// Runs an external prover: the command template may contain {file} and
/// {timeout} placeholders. SZS status lines decide the result; anything
/// else is Unknown with the raw output attached.
ProverResult check_with_prover(const std::string& document, const std::string& command_template,
                               double timeout_seconds);

/// Default prover command template from the environment (HYPERSAT_PROVER).
std::string default_prover_command();

} // namespace hypersat
