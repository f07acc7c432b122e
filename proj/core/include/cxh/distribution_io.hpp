#pragma once

// Plain-text distribution format: one atom per line as `re im prob`,
// whitespace separated. `#` starts a comment; blank lines are ignored.

#include <filesystem>
#include <iosfwd>

#include "cxh/complex_dist.hpp"

namespace cxh {

FiniteDistribution parse_distribution(std::istream& in);
FiniteDistribution read_distribution(const std::filesystem::path& path);

/// Writes with round-trip precision.
void write_distribution(std::ostream& out, const FiniteDistribution& dist);

}  // namespace cxh
