#include "hypersat/router.hpp"

#include <chrono>

#include "hypersat/finite_deciders.hpp"
#include "hypersat/fol.hpp"

namespace hypersat {

SolveMode solve_mode_from_string(const std::string& s) {
    if (s == "auto") return SolveMode::Auto;
    if (s == "largest") return SolveMode::Largest;
    if (s == "pushdown") return SolveMode::Pushdown;
    if (s == "bounded") return SolveMode::Bounded;
    if (s == "xfrag") return SolveMode::XFrag;
    if (s == "np") return SolveMode::Np;
    if (s == "fol") return SolveMode::Fol;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string to_string(SolveMode m) {
    switch (m) {
        case SolveMode::Auto: return "auto";
        case SolveMode::Largest: return "largest";
        case SolveMode::Pushdown: return "pushdown";
        case SolveMode::Bounded: return "bounded";
        case SolveMode::XFrag: return "xfrag";
        case SolveMode::Np: return "np";
        case SolveMode::Fol: return "fol";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

SolveOutcome run_bounded(const Specification& s, const RouteOptions& opts,
                         double remaining_ms) {
    auto start = Clock::now();
    SolveOutcome out;
    out.method = "bounded";
    BoundedSearchOptions bo = opts.bounded;
    bo.budget_ms = std::min(bo.budget_ms, remaining_ms);
    BoundedSearchResult r = bounded_model_search(s, bo);
    out.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (r.status == BoundedStatus::Found) {
        out.verdict = Verdict::Sat;
        out.finite_model = r.model;
    } else {
        out.verdict = Verdict::Unknown;
        out.note = r.status == BoundedStatus::BudgetExceeded
                       ? "bounded search budget exceeded"
                       : "no model within the bounds (search is incomplete)";
    }
    return out;
}

SolveOutcome run_largest(const Specification& s, const RouteOptions& opts,
                         double remaining_ms, bool leave_slack) {
    LargestModelOptions lm;
    lm.max_iters = opts.max_iters;
    lm.budget_ms = std::min(opts.timeout_ms, remaining_ms);
    // When a fallback follows in the plan, leave it a share of the budget.
    if (leave_slack) lm.budget_ms *= 0.6;
    lm.incorporation = opts.incorporation;
    lm.complement = opts.complement;
    lm.complement.budget_ms = std::max(100.0, lm.budget_ms / 4);
    return find_largest_model(s, lm).outcome;
}

SolveOutcome run_pushdown(const Specification& s, const RouteOptions& opts) {
    return decide_forall_exists_eventually(s, opts.eventuality).outcome;
}

SolveOutcome run_np(const Specification& s) {
    if (s.ltl.op() != LtlOp::True) {
        throw std::invalid_argument("np decider requires a trivial trace property");
    }
    auto split = split_eventuality_conjunction(s.hyper.body());
    if (!split) {
        throw std::invalid_argument("np decider: body is not an eventuality conjunction");
    }
    if (split->propositional_rest) {
        return decide_eventuality_conjunction_with_prop(s.hyper, s.ap);
    }
    return decide_eventuality_conjunction(s.hyper, s.ap);
}

SolveOutcome run_xfrag(const Specification& s) { return decide_x_fragment(s); }

SolveOutcome run_fol(const Specification& s, const RouteOptions& opts) {
    SolveOutcome out;
    out.method = "fol";
    FolFormula f = encode_temporal_safety(s);
    std::string doc = emit_tptp(f);
    if (f.falsum) {
        out.verdict = Verdict::Unsat;
        out.note = "safety automaton is empty";
        return out;
    }
    std::string cmd = opts.prover_command.empty() ? default_prover_command()
                                                  : opts.prover_command;
    if (cmd.empty()) {
        out.verdict = Verdict::Unknown;
        out.note = "no external prover configured (set HYPERSAT_PROVER or --prover)";
        return out;
    }
    ProverResult pr = check_with_prover(doc, cmd, opts.timeout_ms / 1000.0);
    switch (pr.status) {
        case ProverStatus::Unsatisfiable:
            out.verdict = Verdict::Unsat;
            out.note = "prover refuted the encoding";
            break;
        case ProverStatus::Satisfiable:
            out.verdict = Verdict::Sat;
            out.note = "prover reported a satisfying first-order model";
            break;
        case ProverStatus::Unknown:
            out.verdict = Verdict::Unknown;
            out.note = "prover gave no SZS verdict";
            break;
    }
    return out;
}

} // namespace

RouteResult route(const Specification& s, const RouteOptions& opts) {
    RouteResult result;
    result.fragment = classify_fragment(s);

    const auto route_start = Clock::now();
    auto remaining_ms = [&]() {
        double used =
            std::chrono::duration<double, std::milli>(Clock::now() - route_start).count();
        return opts.timeout_ms - used;
    };
    bool largest_has_fallback = opts.mode == SolveMode::Auto;
    auto run_one = [&](SolveMode m) -> SolveOutcome {
        switch (m) {
            case SolveMode::Largest:
                return run_largest(s, opts, remaining_ms(), largest_has_fallback);
            case SolveMode::Pushdown: return run_pushdown(s, opts);
            case SolveMode::Bounded: return run_bounded(s, opts, remaining_ms());
            case SolveMode::XFrag: return run_xfrag(s);
            case SolveMode::Np: return run_np(s);
            case SolveMode::Fol: return run_fol(s, opts);
            case SolveMode::Auto: break;
        }
        throw std::logic_error("unreachable");
    };

    if (opts.mode != SolveMode::Auto) {
        result.attempted.push_back(to_string(opts.mode));
        result.outcome = run_one(opts.mode);
        return result;
    }

    // Dispatch order per fragment; verdicts are final, Unknown cascades.
    std::vector<SolveMode> plan;
    const bool forall_exists_star = s.hyper.is_forall_exists_star();
    const bool trivial_psi = s.ltl.op() == LtlOp::True;
    switch (result.fragment) {
        case FragmentTag::XOnly:
            plan = {SolveMode::XFrag};
            break;
        case FragmentTag::SingleEventuality:
            if (s.hyper.existential_count() == 1) plan.push_back(SolveMode::Pushdown);
            if (forall_exists_star) plan.push_back(SolveMode::Largest);
            plan.push_back(SolveMode::Bounded);
            break;
        case FragmentTag::EventualityConjunction:
            if (trivial_psi) plan.push_back(SolveMode::Np);
            if (forall_exists_star) plan.push_back(SolveMode::Largest);
            plan.push_back(SolveMode::Bounded);
            break;
        case FragmentTag::TemporalSafety:
            if (opts.use_fol) plan.push_back(SolveMode::Fol);
            if (forall_exists_star) plan.push_back(SolveMode::Largest);
            plan.push_back(SolveMode::Bounded);
            break;
        case FragmentTag::ForallExistsStar:
            plan = {SolveMode::Largest, SolveMode::Bounded};
            break;
        case FragmentTag::General:
            plan = {SolveMode::Bounded};
            break;
    }

    if (opts.cross_check) {
        // Run every applicable path; definitive verdicts must agree.
        std::vector<SolveOutcome> definitive;
        for (auto m : plan) {
            result.attempted.push_back(to_string(m));
            try {
                SolveOutcome o = run_one(m);
                if (o.verdict != Verdict::Unknown) definitive.push_back(o);
            } catch (const std::exception&) {
                // shape mismatch or resource exhaustion: skip
            }
        }
        for (std::size_t i = 1; i < definitive.size(); ++i) {
            if (definitive[i].verdict != definitive[0].verdict) {
                throw std::logic_error(
                    "cross-check disagreement: " + definitive[0].method + " says " +
                    to_string(definitive[0].verdict) + " but " + definitive[i].method +
                    " says " + to_string(definitive[i].verdict));
            }
        }
        if (!definitive.empty()) {
            result.outcome = definitive[0];
            return result;
        }
        result.outcome.verdict = Verdict::Unknown;
        result.outcome.method = "router";
        result.outcome.note = "no applicable method produced a verdict";
        return result;
    }

    std::string notes;
    for (auto m : plan) {
        if (remaining_ms() <= 0) {
            notes += "budget exhausted before " + to_string(m) + "; ";
            break;
        }
        result.attempted.push_back(to_string(m));
        try {
            SolveOutcome o = run_one(m);
            if (o.verdict != Verdict::Unknown) {
                result.outcome = o;
                return result;
            }
            notes += to_string(m) + ": " + o.note + "; ";
        } catch (const ResourceLimitError& e) {
            notes += to_string(m) + ": " + e.what() + "; ";
        } catch (const std::invalid_argument& e) {
            notes += to_string(m) + ": " + e.what() + "; ";
        }
    }
    result.outcome.verdict = Verdict::Unknown;
    result.outcome.method = "router";
    result.outcome.note = notes.empty() ? "no applicable method" : notes;
    return result;
}

} // namespace hypersat
