#pragma once

// Global optimization over the zero-mean two-point and three-point families.
//
// Every search is a multistart: a deterministic low-discrepancy (or grid)
// seeding of the parameter box, followed by Nelder-Mead polishing of the
// best seeds in cosine-warped coordinates, so box faces (where the optima
// of interest live) become interior stationary points.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cxh/complex_dist.hpp"
#include "cxh/families.hpp"

namespace cxh {

struct SearchOptions {
    /// Total objective evaluations (seeding + polishing).
    std::size_t budget = 200000;
    std::uint64_t seed = 0;
    /// Number of best seeds that get a local polish.
    std::size_t polish_starts = 8;
    /// 0 = one per hardware thread. Results do not depend on this.
    unsigned threads = 1;
};

struct HistoryEntry {
    double value = 0.0;
    std::vector<double> params;
};

struct OptimizationResult {
    double best_value = 0.0;
    std::vector<double> best_params;
    std::size_t evaluations = 0;
    /// One entry per polished start, in seed order.
    std::vector<HistoryEntry> refinement_history;
    bool converged = false;
};

/// inf Re E e^Z over two_point(ell, x, theta), ell in [0, d], x in [0, 1],
/// theta in [0, pi] (the objective is even in theta). Parameters are
/// reported as (ell, x, theta).
OptimizationResult minimize_two_point_re(double d, const SearchOptions& options = {});

/// sup |E e^Z - 1| over the same two-point box.
OptimizationResult sup_abs_two_point(double d, const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Three-point family
//
// Six parameters in [0,1]^5 x [0, 2pi] order:
//   (rotation, gap_a, gap_b, radius2, radius3, scale)
// Vertex k sits at radius r_k (r_1 = 1) and angle rotation + partial gap sum,
// with gaps pi*a, pi*b and 2pi - pi(a+b); (a, b) is folded into a + b >= 1
// so every gap is at most pi and the origin lies in the closed hull. The
// barycentric weights of the origin are the probabilities, and the whole
// support is scaled so its diameter is scale * d.

inline constexpr std::size_t kThreePointDims = 6;

/// E e^Z for the decoded three-point distribution.
Complex three_point_value(std::span<const double> params, double d) noexcept;

/// The decoded zero-mean distribution (on two or three points at the faces).
FiniteDistribution three_point(std::span<const double> params, double d);

/// sup |E e^Z - 1| over zero-mean distributions on at most three points with
/// diameter at most d.
OptimizationResult sup_abs_three_point(double d, const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Critical diameter

struct D0Result {
    double d0 = 0.0;
    /// Final bracket; the two-point infimum is > 0 at lo and < 0 at hi.
    double lo = 0.0;
    double hi = 0.0;
    TwoPointParams extremal;
    double extremal_value = 0.0;
    double tolerance = 0.0;
    std::vector<std::pair<double, double>> brackets;
};

/// Bisection for the diameter at which the two-point infimum of Re E e^Z
/// crosses zero, starting from [pi/2, 4]. Throws DomainError if
/// tolerance < 1e-9, NumericalError if the initial bracket shows no sign
/// change.
D0Result compute_d0(double tolerance = 1e-7, const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Stationary supports

/// Interior critical points of the functional over the mean of a fixed
/// triangle support, found by Newton's method on the exact affine
/// expansion. Each result is the support translated so the critical point
/// sits at the origin.
std::vector<TriangleSupport> stationary_supports(const TriangleSupport& support, Functional functional);

}  // namespace cxh
