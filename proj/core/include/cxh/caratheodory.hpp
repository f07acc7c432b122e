#pragma once

// Constructive planar Caratheodory reduction: a zero-mean finite
// distribution is rewritten as a mixture of zero-mean distributions on at
// most three of its own support points. Since E F(mixture) is the
// weighted sum of the components' E F, extremal questions over all
// zero-mean distributions reduce to the three-point family.

#include <span>
#include <vector>

#include "cxh/complex_dist.hpp"

namespace cxh {

struct ZeroSimplex {
    /// One, two or three indices into the input.
    std::vector<std::size_t> indices;
    /// Convex weights with sum_k weights[k] * points[indices[k]] ~ 0.
    std::vector<double> weights;
};

/// Smallest subset of points whose convex hull contains the origin:
/// the origin itself, a segment through it, or a triangle around it.
/// Orientation tests are exact. When no subset contains the origin exactly
/// but a segment passes within tolerance * max|point| of it (rounding in a
/// numerically zero-mean input), that segment is returned with the
/// weights of the nearest point. Throws DomainError otherwise.
ZeroSimplex zero_simplex_subset(std::span<const Complex> points, double tolerance = 1e-9);

struct MixtureComponent {
    double weight = 0.0;
    FiniteDistribution dist;
};

struct MixtureDecomposition {
    std::vector<MixtureComponent> components;

    std::vector<double> weights() const;
    std::vector<FiniteDistribution> dists() const;
};

/// Peels zero-mean pieces off the distribution until its mass is used up.
/// Each peel removes at least one atom, so there are at most as many
/// components as atoms. Throws DomainError when |mean| > 1e-10.
MixtureDecomposition decompose(const FiniteDistribution& dist);

/// mix() of the components.
FiniteDistribution reconstruct(const MixtureDecomposition& decomposition);

}  // namespace cxh
