#pragma once

// Random finite distributions for property checks.

#include <random>

#include "cxh/complex_dist.hpp"

namespace cxh {

/// Atoms uniform in the unit disk; probabilities are normalized
/// exponentials, each at least about 1e-3 / atoms.
FiniteDistribution random_distribution(std::mt19937_64& rng, std::size_t atoms);

/// random_distribution, centered and scaled to the given diameter.
/// With atoms == 1 the result is the point mass at 0.
FiniteDistribution random_zero_mean(std::mt19937_64& rng, std::size_t atoms, double diam);

/// Zero-mean distribution on the real line with the given diameter.
FiniteDistribution random_real_zero_mean(std::mt19937_64& rng, std::size_t atoms, double diam);

}  // namespace cxh
