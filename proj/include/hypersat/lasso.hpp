#pragma once

#include <string>
#include <vector>

#include "hypersat/atoms.hpp"

namespace hypersat {

/// Ultimately periodic word stem . loop^omega. The loop is nonempty.
struct LassoWord {
    std::vector<Letter> stem;
    std::vector<Letter> loop;

    std::size_t length() const { return stem.size() + loop.size(); }

    /// Letter at absolute position i.
    Letter at(std::size_t i) const {
        if (i < stem.size()) return stem[i];
        return loop[(i - stem.size()) % loop.size()];
    }

    bool operator==(const LassoWord& other) const {
        return stem == other.stem && loop == other.loop;
    }
    bool operator<(const LassoWord& other) const {
        if (stem != other.stem) return stem < other.stem;
        return loop < other.loop;
    }

    std::string to_string(const AtomSet& atoms) const;
};

/// Canonical representative of the denoted word: primitive loop period,
/// and stem letters absorbed into the loop are dropped.
LassoWord canonical_lasso(const LassoWord& w);

/// Rotates the loop left by k, prepending the rotated-off letters to the stem.
/// Denotes the same word.
LassoWord rotate_loop(const LassoWord& w, std::size_t k);

} // namespace hypersat
