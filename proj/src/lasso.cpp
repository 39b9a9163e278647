#include "hypersat/lasso.hpp"

namespace hypersat {

std::string LassoWord::to_string(const AtomSet& atoms) const {
    std::string out;
    for (const auto& l : stem) out += atoms.letter_to_string(l);
    out += "(";
    for (const auto& l : loop) out += atoms.letter_to_string(l);
    out += ")^w";
    return out;
}

LassoWord canonical_lasso(const LassoWord& w) {
    LassoWord c = w;
    // Primitive period of the loop.
    for (std::size_t p = 1; p <= c.loop.size() / 2; ++p) {
        if (c.loop.size() % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < c.loop.size() && periodic; ++i) {
            if (c.loop[i] != c.loop[i % p]) periodic = false;
        }
        if (periodic) {
            c.loop.resize(p);
            break;
        }
    }
    // Absorb stem suffix letters that match the loop read backwards.
    while (!c.stem.empty() && c.stem.back() == c.loop.back()) {
        c.stem.pop_back();
        std::rotate(c.loop.begin(), c.loop.end() - 1, c.loop.end());
    }
    return c;
}

LassoWord rotate_loop(const LassoWord& w, std::size_t k) {
    LassoWord out = w;
    k %= w.loop.size();
    for (std::size_t i = 0; i < k; ++i) {
        out.stem.push_back(out.loop[i]);
    }
    std::rotate(out.loop.begin(), out.loop.begin() + static_cast<std::ptrdiff_t>(k),
                out.loop.end());
    return out;
}

} // namespace hypersat
