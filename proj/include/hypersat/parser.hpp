#pragma once

#include <stdexcept>
#include <string>

#include "hypersat/formula.hpp"

namespace hypersat {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Parses an LTL formula; every atom must belong to `ap`.
LtlFormula parse_ltl(const std::string& text, const AtomSet& ap);

/// Parses a HyperLTL formula `forall p. exists q. <body>` with atoms `a_p`;
/// every proposition must belong to `ap` and every trace variable must be bound.
HyperLtlFormula parse_hyper(const std::string& text, const AtomSet& ap);

/// Parses a two-section specification document:
///   ltl: <formula lines>
///   hyperltl: <formula lines>
/// The atom set is inferred as the union of atoms used by both parts.
Specification parse_specification(const std::string& text);

Specification parse_specification_file(const std::string& path);

} // namespace hypersat
