#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypersat/formula.hpp"

namespace hypersat {

/// CNF in DIMACS convention: literals are +-(var+1), vars are 0-based.
struct Cnf {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::string> var_names; // original variables first

    std::string to_dimacs() const;
};

/// Tseitin transformation of a propositional formula (atoms as variables).
Cnf to_cnf(const LtlFormula& f);

/// DPLL with unit propagation. Returns an assignment for the original
/// variables when satisfiable.
std::optional<std::map<std::string, bool>> sat_assignment(const LtlFormula& f);

/// Stress hook: when HYPERSAT_SAT_CMD is set, the DIMACS instance is also fed
/// to that external solver (a command reading the file named by {file} and
/// printing s SATISFIABLE / s UNSATISFIABLE) and a verdict mismatch against
/// the internal solver raises. No-op otherwise.
void cross_check_with_external_solver(const Cnf& cnf, bool internal_satisfiable);

} // namespace hypersat
