#include "hypersat/atoms.hpp"

#include <algorithm>

namespace hypersat {

AtomSet::AtomSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxAtoms) {
        throw std::invalid_argument("atom set too large: " + std::to_string(names_.size()) +
                                    " > " + std::to_string(kMaxAtoms));
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = i + 1; j < names_.size(); ++j) {
            if (names_[i] == names_[j]) {
                throw std::invalid_argument("duplicate atom: " + names_[i]);
            }
        }
    }
}

std::optional<std::size_t> AtomSet::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t AtomSet::add(const std::string& name) {
    if (auto i = index_of(name)) return *i;
    if (names_.size() >= kMaxAtoms) {
        throw std::invalid_argument("atom set overflow while adding " + name);
    }
    names_.push_back(name);
    return names_.size() - 1;
}

std::string AtomSet::letter_to_string(Letter l) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (letter_has(l, i)) {
            if (!first) out += ",";
            out += names_[i];
            first = false;
        }
    }
    out += "}";
    return out;
}

} // namespace hypersat
