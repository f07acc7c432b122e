#pragma once

// Zero-mean two-point and three-point (triangle) families, the affine
// expansion of E e^Z over a fixed triangle support, and the second-order
// forms at stationary points of Re E e^Z and |E e^Z - 1|^2.

#include <array>
#include <optional>

#include "cxh/complex_dist.hpp"

namespace cxh {

// ---------------------------------------------------------------------------
// Two-point family

/// Coordinates on zero-mean two-point distributions: support
/// ell(1-x)e^{i theta} with probability x and -ell x e^{i theta} with
/// probability 1-x. The diameter is ell.
struct TwoPointParams {
    double ell = 0.0;
    double x = 0.0;
    double theta = 0.0;
};

FiniteDistribution two_point(const TwoPointParams& params);

/// E e^Z for two_point(params), straight from the formula.
Complex two_point_value(const TwoPointParams& params) noexcept;

/// Re E e^Z for two_point(params).
double two_point_objective(const TwoPointParams& params);

// ---------------------------------------------------------------------------
// Triangle family

/// Three non-collinear support points.
class TriangleSupport {
public:
    /// Twice the |signed area| must exceed 1e-10 * diameter^2.
    static constexpr double kDegeneracy = 1e-10;

    TriangleSupport(Complex z1, Complex z2, Complex z3);

    const std::array<Complex, 3>& vertices() const noexcept { return z_; }
    Complex operator[](std::size_t k) const noexcept { return z_[k]; }
    double diameter() const noexcept;
    /// Twice the signed area (positive for counterclockwise vertices).
    double twice_area() const noexcept;

    TriangleSupport translated(Complex shift) const;

    /// Barycentric coordinates of m; they sum to one exactly up to rounding.
    std::array<double, 3> barycentric(Complex m) const noexcept;

private:
    std::array<Complex, 3> z_;
};

enum class BoundaryPolicy {
    reject,  // target must lie strictly inside
    allow,   // boundary targets yield a distribution on at most two points
};

/// The distribution on the triangle's vertices whose mean is target.
/// Throws DomainError when the target is outside (or on the boundary
/// under BoundaryPolicy::reject).
FiniteDistribution triangle_dist(const TriangleSupport& support, Complex target,
                                 BoundaryPolicy policy = BoundaryPolicy::reject);

/// A, B, C with E e^{Z(x,y)} = A x + B y + C, where Z(x,y) lives on the
/// support with mean x + iy.
struct ExpansionCoefficients {
    Complex A;
    Complex B;
    Complex C;
};

/// Requires 0 in the closed hull of the support.
ExpansionCoefficients expansion_coefficients(const TriangleSupport& support);

enum class Convention {
    modulus,    // A = C + i v (C-1), B = iC + i w (C-1)
    real_part,  // A = C + i v,       B = iC + i w
};

struct StationaryFrame {
    double v = 0.0;
    double w = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;
    double delta = 0.0;  // |C - 1|
};

struct FrameFit {
    StationaryFrame frame;
    /// Norm of the part of (A - C, B - iC) that the convention cannot
    /// explain. Zero exactly at a stationary point of the functional.
    double residual = 0.0;
};

/// Least-squares fit of (v, w). Under the modulus convention, throws
/// DomainError when C = 1.
FrameFit stationary_frame(const ExpansionCoefficients& coeffs, Convention convention);

struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const noexcept { return xx + yy; }
    double det() const noexcept { return xx * yy - xy * xy; }
    double min_eigenvalue() const noexcept;
    double max_eigenvalue() const noexcept;
    double quadratic(double x, double y) const noexcept
    {
        return xx * x * x + 2.0 * xy * x * y + yy * y * y;
    }
};

/// Second-order form of Re E e^{Z(x,y)-(x+iy)} at a real-part stationary point.
Sym2 r_matrix(const StationaryFrame& f) noexcept;

/// w/2 - sqrt((w + c0)^2 + (v + c1)^2)/2.
double r_min_eigenvalue(const StationaryFrame& f) noexcept;

/// The matrix Q exactly as displayed for the modulus functional.
Sym2 q_matrix(const StationaryFrame& f) noexcept;

/// Claimed trace of Q: delta (v^2 + w^2 - 1).
double q_trace_claim(const StationaryFrame& f) noexcept;

/// Claimed determinant of Q: delta (-w^2 c0^2 - (1 - v^2 - w^2) c0 - (v - w c1)^2).
double q_det_claim(const StationaryFrame& f) noexcept;

/// Second-order form of |E e^{Z(x,y)-(x+iy)} - 1|^2 at a modulus-stationary
/// point, expanded directly from A = C + iv(C-1), B = iC + iw(C-1):
///   [ D^2 v^2 + c0 - c0^2 - c1^2 ,  D^2 v (w+1) - c1       ]
///   [ D^2 v (w+1) - c1           ,  D^2 (w+1)^2 + c0 - 1   ]
/// with D = delta.
Sym2 q_matrix_expanded(const StationaryFrame& f) noexcept;

/// The frame with delta replaced by delta^2 and w by w + 1, i.e. read
/// against B = i + iw(C-1). q_matrix of this frame equals
/// q_matrix_expanded of the original.
StationaryFrame squared_delta_frame(const StationaryFrame& f) noexcept;

enum class Functional {
    modulus_squared,  // |E e^{Z(x,y)-(x+iy)} - 1|^2
    real_part,        // Re E e^{Z(x,y)-(x+iy)}
};

/// The functional at mean x + iy, by direct expectation over triangle_dist.
double functional_value(const TriangleSupport& support, Functional functional, double x, double y);

/// Central-difference Hessian of the functional at (0, 0), divided by two
/// so it is directly comparable with r_matrix / q_matrix. Default step is
/// 1e-4 times the triangle diameter. Throws DomainError if the stencil
/// leaves the triangle.
Sym2 hessian_fd(const TriangleSupport& support, Functional functional,
                std::optional<double> step = std::nullopt);

}  // namespace cxh
