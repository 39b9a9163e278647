#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypersat/bench.hpp"
#include "hypersat/finite_deciders.hpp"
#include "hypersat/fol.hpp"
#include "hypersat/parser.hpp"
#include "hypersat/pds.hpp"

namespace py = pybind11;
using namespace hypersat;

namespace {

Specification spec_from_text(const std::string& text) { return parse_specification(text); }

py::dict outcome_to_dict(const SolveOutcome& o, const std::string& fragment) {
    py::dict d;
    d["verdict"] = to_string(o.verdict);
    d["method"] = o.method;
    d["iterations"] = o.iterations;
    d["time_ms"] = o.elapsed_ms;
    d["fragment"] = fragment;
    if (!o.note.empty()) d["note"] = o.note;
    if (o.finite_model) {
        py::list traces;
        for (const auto& t : o.finite_model->traces) {
            py::dict w;
            w["stem"] = t.stem;
            w["loop"] = t.loop;
            traces.append(w);
        }
        d["model_traces"] = traces;
    }
    d["has_model_automaton"] = o.model_automaton.has_value();
    return d;
}

} // namespace

PYBIND11_MODULE(hypersat, m) {
    m.doc() = "satisfiability toolkit for LTL + forall-exists* HyperLTL specifications";

    py::class_<Specification>(m, "Specification")
        .def_static("parse", &spec_from_text, py::arg("text"),
                    "Parse a two-section (ltl:/hyperltl:) specification document")
        .def_property_readonly("ltl", [](const Specification& s) { return s.ltl.to_string(); })
        .def_property_readonly("hyper",
                               [](const Specification& s) { return s.hyper.to_string(); })
        .def_property_readonly("atoms",
                               [](const Specification& s) { return s.ap.names(); })
        .def("__repr__", [](const Specification& s) { return s.to_string(); });

    m.def("classify", [](const Specification& s) { return to_string(classify_fragment(s)); },
          py::arg("spec"), "Fragment tag of a specification");

    m.def(
        "solve",
        [](const Specification& s, const std::string& mode, double timeout_s,
           std::size_t max_iters) {
            RouteOptions opts;
            opts.mode = solve_mode_from_string(mode);
            opts.timeout_ms = timeout_s * 1000.0;
            opts.max_iters = max_iters;
            RouteResult r = route(s, opts);
            return outcome_to_dict(r.outcome, to_string(r.fragment));
        },
        py::arg("spec"), py::arg("mode") = "auto", py::arg("timeout_s") = 300.0,
        py::arg("max_iters") = 64,
        "Decide a specification; returns a dict with verdict/method/iterations");

    m.def(
        "eval_ltl",
        [](const std::string& formula, const std::vector<Letter>& stem,
           const std::vector<Letter>& loop, const std::vector<std::string>& atoms) {
            AtomSet ap(atoms);
            return eval_ltl_on_lasso(parse_ltl(formula, ap), LassoWord{stem, loop}, ap);
        },
        py::arg("formula"), py::arg("stem"), py::arg("loop"), py::arg("atoms"),
        "Direct LTL evaluation on an ultimately periodic word (letters are bitmasks)");

    m.def(
        "translate_hoa",
        [](const std::string& formula, const std::vector<std::string>& atoms) {
            AtomSet ap(atoms);
            return export_hoa(reduce(translate(parse_ltl(formula, ap), ap)), formula);
        },
        py::arg("formula"), py::arg("atoms"), "LTL to Buchi automaton, as HOA v1 text");

    m.def(
        "emit_tptp",
        [](const Specification& s) { return emit_tptp(encode_temporal_safety(s)); },
        py::arg("spec"), "Two-sorted first-order encoding of a temporally safe specification");

    m.def(
        "builtin_benchmarks",
        []() {
            py::list out;
            for (const auto& [name, spec] : builtin_benchmarks()) {
                out.append(py::make_tuple(name, spec));
            }
            return out;
        },
        "The hand-crafted benchmark suite");

    m.def(
        "random_spec",
        [](std::uint64_t seed, std::size_t ast_size, std::size_t ap_count) {
            return random_spec(seed, ast_size, ap_count, {Quant::Forall, Quant::Exists});
        },
        py::arg("seed"), py::arg("ast_size") = 15, py::arg("ap_count") = 2,
        "Seed-deterministic random forall-exists specification");
}
