#include "hypersat/bounded.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

namespace hypersat {

namespace {

std::vector<LassoWord> candidate_traces(const Specification& s,
                                        const BoundedSearchOptions& opts) {
    const std::size_t letters = s.ap.letter_count();
    std::set<LassoWord> seen;
    std::vector<LassoWord> out;

    // Enumerate loops then stems, shortest first.
    for (std::size_t len = 1; len <= opts.max_loop; ++len) {
        std::vector<Letter> word(len, 0);
        while (true) {
            LassoWord w;
            w.loop.assign(word.begin(), word.end());
            // stems over this loop
            std::vector<Letter> stem;
            std::function<void(std::size_t)> stems = [&](std::size_t remaining) {
                LassoWord cand;
                cand.stem = stem;
                cand.loop = w.loop;
                LassoWord canon = canonical_lasso(cand);
                if (!seen.count(canon)) {
                    seen.insert(canon);
                    if (eval_ltl_on_lasso(s.ltl, canon, s.ap)) out.push_back(canon);
                }
                if (remaining == 0) return;
                for (Letter l = 0; l < letters; ++l) {
                    stem.push_back(l);
                    stems(remaining - 1);
                    stem.pop_back();
                }
            };
            stems(opts.max_stem);

            // next loop word
            std::size_t i = 0;
            for (; i < len; ++i) {
                if (++word[i] < letters) break;
                word[i] = 0;
            }
            if (i == len) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

BoundedSearchResult bounded_model_search(const Specification& s,
                                         const BoundedSearchOptions& opts) {
    if (opts.max_traces == 0 || opts.max_loop == 0) {
        throw std::invalid_argument("bounded_model_search: bounds must be positive");
    }
    BoundedSearchResult result;
    auto start = std::chrono::steady_clock::now();
    auto expired = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
                   .count() > opts.budget_ms;
    };
    std::vector<LassoWord> candidates = candidate_traces(s, opts);

    // Enumerate sorted index subsets by size, lexicographically within each
    // size layer; the first hit in this canonical order wins.
    std::vector<std::size_t> idx;
    bool budget_hit = false;
    std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t start,
                                                             std::size_t remaining) -> bool {
        if (remaining == 0) {
            if (result.sets_checked >= opts.budget ||
                (result.sets_checked % 256 == 0 && expired())) {
                budget_hit = true;
                return false;
            }
            ++result.sets_checked;
            FiniteModel m;
            for (auto i : idx) m.traces.push_back(candidates[i]);
            if (eval_hyper_on_model(s.hyper, m, s.ap)) {
                result.model = m;
                result.status = BoundedStatus::Found;
                return true;
            }
            return false;
        }
        for (std::size_t i = start; i < candidates.size(); ++i) {
            idx.push_back(i);
            if (fill(i + 1, remaining - 1)) return true;
            idx.pop_back();
            if (budget_hit) return false;
        }
        return false;
    };
    for (std::size_t size = 1; size <= opts.max_traces && !budget_hit; ++size) {
        if (fill(0, size)) break;
    }

    if (result.status == BoundedStatus::Found) {
        // Self-validation: every returned model passes the evaluator and the
        // per-trace property check.
        for (const auto& t : result.model->traces) {
            if (!eval_ltl_on_lasso(s.ltl, t, s.ap)) {
                throw std::logic_error("bounded search produced a trace violating psi");
            }
        }
        if (!eval_hyper_on_model(s.hyper, *result.model, s.ap)) {
            throw std::logic_error("bounded search produced an invalid model");
        }
        return result;
    }
    result.status = budget_hit ? BoundedStatus::BudgetExceeded : BoundedStatus::NoneInBounds;
    return result;
}

} // namespace hypersat
