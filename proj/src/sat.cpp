#include "hypersat/sat.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>
#include <sstream>
#include <stdexcept>

namespace hypersat {

namespace {

bool is_propositional(const LtlFormula& f) {
    if (is_temporal(f.op())) return false;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        if (!is_propositional(f.child(i))) return false;
    }
    return true;
}

struct Tseitin {
    Cnf cnf;
    std::map<std::string, int> var_of;

    int fresh(const std::string& name) {
        cnf.var_names.push_back(name);
        return static_cast<int>(cnf.num_vars++);
    }

    int atom_var(const std::string& name) {
        auto it = var_of.find(name);
        if (it != var_of.end()) return it->second;
        int v = fresh(name);
        var_of[name] = v;
        return v;
    }

    // Returns a literal (DIMACS convention) equisatisfiably representing f.
    int encode(const LtlFormula& f) {
        switch (f.op()) {
            case LtlOp::Atom:
                return atom_var(f.atom_name()) + 1;
            case LtlOp::True: {
                int v = fresh("#true");
                cnf.clauses.push_back({v + 1});
                return v + 1;
            }
            case LtlOp::False: {
                int v = fresh("#false");
                cnf.clauses.push_back({-(v + 1)});
                return v + 1;
            }
            case LtlOp::Not:
                return -encode(f.child(0));
            case LtlOp::And: {
                int a = encode(f.child(0));
                int b = encode(f.child(1));
                int v = fresh("#and") + 1;
                cnf.clauses.push_back({-v, a});
                cnf.clauses.push_back({-v, b});
                cnf.clauses.push_back({v, -a, -b});
                return v;
            }
            case LtlOp::Or: {
                int a = encode(f.child(0));
                int b = encode(f.child(1));
                int v = fresh("#or") + 1;
                cnf.clauses.push_back({-v, a, b});
                cnf.clauses.push_back({v, -a});
                cnf.clauses.push_back({v, -b});
                return v;
            }
            case LtlOp::Implies: {
                return encode(LtlFormula::make_or(LtlFormula::make_not(f.child(0)), f.child(1)));
            }
            case LtlOp::Iff: {
                int a = encode(f.child(0));
                int b = encode(f.child(1));
                int v = fresh("#iff") + 1;
                cnf.clauses.push_back({-v, -a, b});
                cnf.clauses.push_back({-v, a, -b});
                cnf.clauses.push_back({v, a, b});
                cnf.clauses.push_back({v, -a, -b});
                return v;
            }
            default:
                throw std::invalid_argument("sat: formula contains temporal operators");
        }
    }
};

/// Plain DPLL with unit propagation over the clause set.
bool dpll(const std::vector<std::vector<int>>& clauses, std::vector<int>& assignment,
          std::size_t num_vars) {
    // assignment: 0 unknown, +1 true, -1 false (indexed by var).
    while (true) {
        bool changed = false;
        for (const auto& c : clauses) {
            int unassigned = 0;
            int last_lit = 0;
            bool satisfied = false;
            for (int lit : c) {
                int var = std::abs(lit) - 1;
                int val = assignment[static_cast<std::size_t>(var)];
                if (val == 0) {
                    ++unassigned;
                    last_lit = lit;
                } else if ((val > 0) == (lit > 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) return false; // conflict
            if (unassigned == 1) {
                assignment[static_cast<std::size_t>(std::abs(last_lit) - 1)] =
                    last_lit > 0 ? 1 : -1;
                changed = true;
            }
        }
        if (!changed) break;
    }
    // Pick a branching variable.
    for (std::size_t v = 0; v < num_vars; ++v) {
        if (assignment[v] != 0) continue;
        for (int val : {1, -1}) {
            std::vector<int> copy = assignment;
            copy[v] = val;
            if (dpll(clauses, copy, num_vars)) {
                assignment = copy;
                return true;
            }
        }
        return false;
    }
    return true;
}

} // namespace

std::string Cnf::to_dimacs() const {
    std::ostringstream out;
    out << "c hypersat cnf\n";
    for (std::size_t v = 0; v < var_names.size(); ++v) {
        if (!var_names[v].empty() && var_names[v][0] != '#') {
            out << "c var " << (v + 1) << " " << var_names[v] << "\n";
        }
    }
    out << "p cnf " << num_vars << " " << clauses.size() << "\n";
    for (const auto& c : clauses) {
        for (int lit : c) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

Cnf to_cnf(const LtlFormula& f) {
    if (!is_propositional(f)) {
        throw std::invalid_argument("to_cnf: formula contains temporal operators");
    }
    Tseitin t;
    int root = t.encode(f);
    t.cnf.clauses.push_back({root});
    return t.cnf;
}

void cross_check_with_external_solver(const Cnf& cnf, bool internal_satisfiable) {
    const char* cmd_template = std::getenv("HYPERSAT_SAT_CMD");
    if (!cmd_template || !*cmd_template) return;
    std::string path = "/tmp/hypersat_cnf_XXXXXX";
    {
        std::vector<char> buf(path.begin(), path.end());
        buf.push_back('\0');
        int fd = mkstemp(buf.data());
        if (fd < 0) return;
        path.assign(buf.data());
        std::ofstream out(path);
        out << cnf.to_dimacs();
        close(fd);
    }
    std::string cmd = cmd_template;
    auto at = cmd.find("{file}");
    if (at != std::string::npos) {
        cmd.replace(at, 6, path);
    } else {
        cmd += " " + path;
    }
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) {
        std::remove(path.c_str());
        return;
    }
    char buf[4096];
    std::string output;
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
    pclose(pipe);
    std::remove(path.c_str());
    bool ext_sat = output.find("s SATISFIABLE") != std::string::npos;
    bool ext_unsat = output.find("s UNSATISFIABLE") != std::string::npos;
    if (!ext_sat && !ext_unsat) return; // solver gave no verdict
    if (ext_sat != internal_satisfiable) {
        throw std::logic_error("external SAT solver disagrees with the internal one");
    }
}

std::optional<std::map<std::string, bool>> sat_assignment(const LtlFormula& f) {
    Cnf cnf = to_cnf(f);
    std::vector<int> assignment(cnf.num_vars, 0);
    bool satisfiable = dpll(cnf.clauses, assignment, cnf.num_vars);
    cross_check_with_external_solver(cnf, satisfiable);
    if (!satisfiable) return std::nullopt;
    std::map<std::string, bool> out;
    for (std::size_t v = 0; v < cnf.num_vars; ++v) {
        const std::string& name = cnf.var_names[v];
        if (!name.empty() && name[0] != '#') {
            out[name] = assignment[v] > 0;
        }
    }
    return out;
}

} // namespace hypersat
