#pragma once

#include "hypersat/bounded.hpp"
#include "hypersat/largest_model.hpp"
#include "hypersat/outcome.hpp"
#include "hypersat/pds.hpp"

namespace hypersat {

enum class SolveMode { Auto, Largest, Pushdown, Bounded, XFrag, Np, Fol };

SolveMode solve_mode_from_string(const std::string& s);
std::string to_string(SolveMode m);

struct RouteOptions {
    SolveMode mode = SolveMode::Auto;
    double timeout_ms = 300000;
    std::size_t max_iters = 64;
    bool use_fol = false;          // enables the FOL path in auto mode
    std::string prover_command;    // empty: HYPERSAT_PROVER or skip
    bool cross_check = false;      // run all applicable definitive methods
    PsiIncorporation incorporation = PsiIncorporation::UniversalOnly;
    BoundedSearchOptions bounded;
    EventualityOptions eventuality;
    ComplementOptions complement{64, 400000, 12};
};

struct RouteResult {
    SolveOutcome outcome;
    FragmentTag fragment = FragmentTag::General;
    std::vector<std::string> attempted; // methods in dispatch order
};

/// Fragment-directed dispatch. Verdicts from any path are final; Unknown
/// cascades to the next applicable path.
RouteResult route(const Specification& s, const RouteOptions& opts = {});

} // namespace hypersat
