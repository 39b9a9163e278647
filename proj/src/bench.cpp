#include "hypersat/bench.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

namespace hypersat {

namespace {

using F = LtlFormula;

F ia(const std::string& prop, const std::string& var) {
    return F::atom(indexed_atom(prop, var));
}

} // namespace

Specification intro_example_spec() {
    Specification s;
    s.ap = AtomSet({"rec", "send"});
    // (!rec) U (rec & X G !rec) & G (rec <-> X send)
    F rec = F::atom("rec");
    F send = F::atom("send");
    s.ltl = F::make_and(
        F::until(F::make_not(rec), F::make_and(rec, F::next(F::globally(F::make_not(rec))))),
        F::globally(F::iff(rec, F::next(send))));
    s.hyper = HyperLtlFormula({{Quant::Forall, {"p"}}, {Quant::Exists, {"q"}}},
                              F::eventually(F::make_and(ia("send", "p"), ia("rec", "q"))));
    return s;
}

Specification enforce_spec(std::size_t n) {
    Specification s;
    s.ap = AtomSet({"a"});
    std::vector<std::pair<Quant, TraceVar>> prefix{{Quant::Forall, {"p"}}};
    for (std::size_t i = 1; i <= n; ++i) {
        prefix.push_back({Quant::Exists, {"q" + std::to_string(i)}});
    }
    std::vector<F> conj;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            conj.push_back(F::eventually(F::make_not(
                F::iff(ia("a", "q" + std::to_string(i)), ia("a", "q" + std::to_string(j))))));
        }
    }
    s.hyper = HyperLtlFormula(prefix, F::conj_all(conj));
    return s;
}

Specification unsat_spec(std::size_t n) {
    Specification s;
    s.ap = AtomSet({"a"});
    F a = F::atom("a");
    // (!a) U (a & X G !a)  &  X^n G !a
    F once = F::until(F::make_not(a), F::make_and(a, F::next(F::globally(F::make_not(a)))));
    F tail = F::globally(F::make_not(a));
    for (std::size_t i = 0; i < n; ++i) tail = F::next(tail);
    s.ltl = F::make_and(once, tail);
    s.hyper = HyperLtlFormula({{Quant::Forall, {"p"}}, {Quant::Exists, {"q"}}},
                              F::eventually(F::make_and(ia("a", "p"), F::next(ia("a", "q")))));
    return s;
}

Specification inf_spec() {
    // The three-conjunct property whose models are all infinite:
    //   (exists r. a_r)  /\  (forall p. G(a_p -> X G !a_p))
    //                    /\  (forall p. exists q. G(a_p <-> X a_q))
    // merged into a single forall exists^2 formula (single-universal conjuncts
    // share the universal position).
    Specification s;
    s.ap = AtomSet({"a"});
    F c1 = F::globally(F::implies(ia("a", "p"), F::next(F::globally(F::make_not(ia("a", "p"))))));
    F c2 = F::globally(F::iff(ia("a", "p"), F::next(ia("a", "q"))));
    F c3 = ia("a", "r");
    s.hyper = HyperLtlFormula(
        {{Quant::Forall, {"p"}}, {Quant::Exists, {"q"}}, {Quant::Exists, {"r"}}},
        F::make_and(F::make_and(c1, c2), c3));
    return s;
}

std::vector<NamedSpec> builtin_benchmarks() {
    std::vector<NamedSpec> out;
    out.push_back({"Inf(§3.1)", inf_spec()});
    out.push_back({"Example1.1", intro_example_spec()});
    for (std::size_t n : {2, 3, 5}) {
        out.push_back({"Enforce-" + std::to_string(n), enforce_spec(n)});
    }
    for (std::size_t n : {3, 5, 9}) {
        out.push_back({"Unsat-" + std::to_string(n), unsat_spec(n)});
    }
    return out;
}

namespace {

struct RandomGen {
    std::mt19937_64 rng;
    const AtomSet& ap;
    const std::vector<std::string>& vars;

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

    F leaf() {
        std::size_t a = pick(ap.size());
        std::size_t v = pick(vars.size());
        return F::atom(indexed_atom(ap.name(a), vars[v]));
    }

    F unary(F sub) {
        switch (pick(4)) {
            case 0: return F::make_not(std::move(sub));
            case 1: return F::next(std::move(sub));
            case 2: return F::eventually(std::move(sub));
            default: return F::globally(std::move(sub));
        }
    }

    F binary(F l, F r) {
        switch (pick(7)) {
            case 0: return F::make_and(std::move(l), std::move(r));
            case 1: return F::make_or(std::move(l), std::move(r));
            case 2: return F::implies(std::move(l), std::move(r));
            case 3: return F::iff(std::move(l), std::move(r));
            case 4: return F::until(std::move(l), std::move(r));
            case 5: return F::weak_until(std::move(l), std::move(r));
            default: return F::release(std::move(l), std::move(r));
        }
    }

    F gen(std::size_t size) {
        if (size <= 1) return leaf();
        if (size == 2) return unary(gen(1));
        // 4 unary shapes vs 7 binary shapes
        if (pick(11) < 4) return unary(gen(size - 1));
        std::size_t left = 1 + pick(size - 2);
        F l = gen(left);
        F r = gen(size - 1 - left);
        return binary(std::move(l), std::move(r));
    }
};

} // namespace

Specification random_spec(std::uint64_t seed, std::size_t ast_size, std::size_t ap_count,
                          const std::vector<Quant>& prefix) {
    if (ast_size < 1) throw std::invalid_argument("random_spec: ast_size must be >= 1");
    std::vector<std::string> ap_names;
    for (std::size_t i = 0; i < ap_count; ++i) {
        ap_names.push_back(std::string(1, static_cast<char>('a' + i % 26)) +
                           (i >= 26 ? std::to_string(i / 26) : ""));
    }
    Specification s;
    s.ap = AtomSet(ap_names);
    std::vector<std::pair<Quant, TraceVar>> pfx;
    std::vector<std::string> var_names;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        std::string v = "p" + std::to_string(i);
        pfx.push_back({prefix[i], TraceVar{v}});
        var_names.push_back(v);
    }
    RandomGen g{std::mt19937_64(seed), s.ap, var_names};
    s.hyper = HyperLtlFormula(pfx, g.gen(ast_size));
    return s;
}

std::string record_to_json(const BenchRecord& r) {
    nlohmann::json j;
    j["version"] = "1";
    j["instance"] = r.instance;
    j["fragment"] = r.fragment;
    j["method"] = r.method;
    j["verdict"] = to_string(r.verdict);
    j["iterations"] = r.iterations;
    j["time_ms"] = r.time_ms;
    if (r.has_certificate) j["certificate"] = r.note.empty() ? "present" : r.note;
    return j.dump();
}

std::string RunReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back(nlohmann::json::parse(record_to_json(r)));
    }
    nlohmann::json j;
    j["version"] = "1";
    j["solved"] = solved;
    j["total"] = total;
    j["records"] = arr;
    return j.dump(2);
}

std::string RunReport::to_table() const {
    std::ostringstream out;
    out << std::left << std::setw(16) << "instance" << std::setw(26) << "fragment"
        << std::setw(16) << "method" << std::setw(9) << "verdict" << std::setw(7) << "#iter"
        << std::setw(12) << "time[ms]" << "\n";
    for (const auto& r : records) {
        out << std::left << std::setw(16) << r.instance << std::setw(26) << r.fragment
            << std::setw(16) << r.method << std::setw(9) << to_string(r.verdict);
        if (r.method == "largest-model") {
            out << std::setw(7) << r.iterations;
        } else {
            out << std::setw(7) << "";
        }
        out << std::setw(12) << std::fixed << std::setprecision(1) << r.time_ms << "\n";
    }
    out << "solved " << solved << "/" << total << "\n";
    return out.str();
}

namespace {

BenchRecord bench_one(const std::string& name, const Specification& spec,
                      const BenchOptions& opts) {
    RouteOptions ro;
    ro.timeout_ms = opts.per_instance_timeout_ms;
    ro.cross_check = opts.cross_check;
    BenchRecord rec;
    rec.instance = name;
    auto start = std::chrono::steady_clock::now();
    try {
        RouteResult r = route(spec, ro);
        rec.fragment = to_string(r.fragment);
        rec.method = r.outcome.method;
        rec.verdict = r.outcome.verdict;
        rec.iterations = r.outcome.iterations;
        rec.time_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        rec.has_certificate = r.outcome.model_automaton.has_value() ||
                              r.outcome.finite_model.has_value() ||
                              r.outcome.pds_run.has_value();
        rec.note = r.outcome.note;
    } catch (const std::exception& e) {
        rec.verdict = Verdict::Unknown;
        rec.method = "error";
        rec.note = e.what();
    }
    return rec;
}

} // namespace

RunReport run_benchmarks(const BenchOptions& opts) {
    RunReport report;
    std::vector<std::pair<std::string, Specification>> instances;
    if (opts.suite == "table3") {
        for (const auto& [name, spec] : builtin_benchmarks()) {
            instances.emplace_back(name, spec);
        }
    } else if (opts.suite == "random") {
        for (std::size_t size = opts.size_min; size <= opts.size_max; ++size) {
            for (std::size_t i = 0; i < opts.random_count; ++i) {
                std::uint64_t seed = opts.seed * 1000003u + size * 1009u + i;
                std::string name =
                    "rand-s" + std::to_string(size) + "-" + std::to_string(i);
                instances.emplace_back(
                    name, random_spec(seed, size, 2, {Quant::Forall, Quant::Exists}));
            }
        }
    } else {
        throw std::invalid_argument("unknown suite '" + opts.suite + "'");
    }

    if (opts.jobs <= 1) {
        for (const auto& [name, spec] : instances) {
            report.records.push_back(bench_one(name, spec, opts));
        }
    } else {
        std::vector<std::future<BenchRecord>> futures;
        for (const auto& [name, spec] : instances) {
            futures.push_back(std::async(std::launch::async, bench_one, name, spec, opts));
            if (futures.size() >= opts.jobs) {
                report.records.push_back(futures.front().get());
                futures.erase(futures.begin());
            }
        }
        for (auto& f : futures) report.records.push_back(f.get());
    }

    report.total = report.records.size();
    for (const auto& r : report.records) {
        if (r.verdict != Verdict::Unknown) ++report.solved;
    }
    return report;
}

} // namespace hypersat
