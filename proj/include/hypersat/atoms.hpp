#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypersat {

/// A letter is a subset of the atom set, encoded as a bitmask indexed by
/// the owning AtomSet. At most 20 atoms are supported; automata products
/// multiply alphabets, so the bound is enforced early and loudly.
using Letter = std::uint32_t;

constexpr std::size_t kMaxAtoms = 20;

class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name).has_value(); }

    /// Adds the atom if missing; returns its index either way.
    std::size_t add(const std::string& name);

    Letter full_mask() const { return size() == 0 ? 0u : ((1u << size()) - 1u); }
    std::size_t letter_count() const { return std::size_t{1} << size(); }

    std::string letter_to_string(Letter l) const;

    bool operator==(const AtomSet& other) const { return names_ == other.names_; }
    bool operator!=(const AtomSet& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
};

inline bool letter_has(Letter l, std::size_t atom) { return (l >> atom) & 1u; }

} // namespace hypersat
