#include "cxh/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cxh/geometry.hpp"

namespace cxh {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

Complex checked_exp(Complex z)
{
    if (z.real() > 709.0) {
        throw NumericalError("exponential overflows at Re z = " + std::to_string(z.real()));
    }
    return std::exp(z);
}

void check_params(const TwoPointParams& p)
{
    if (!std::isfinite(p.ell) || p.ell < 0.0) {
        throw DomainError("two_point: ell must be finite and non-negative");
    }
    if (!(p.x >= 0.0 && p.x <= 1.0)) {
        throw DomainError("two_point: x must lie in [0, 1]");
    }
    if (!(p.theta >= -std::numbers::pi && p.theta <= std::numbers::pi)) {
        throw DomainError("two_point: theta must lie in [-pi, pi]");
    }
}

}  // namespace

FiniteDistribution two_point(const TwoPointParams& params)
{
    check_params(params);
    const Complex dir = std::polar(1.0, params.theta);
    const Complex far = params.ell * (1.0 - params.x) * dir;
    const Complex near = -params.ell * params.x * dir;
    return FiniteDistribution({Atom{far, params.x}, Atom{near, 1.0 - params.x}});
}

Complex two_point_value(const TwoPointParams& p) noexcept
{
    const Complex dir = std::polar(1.0, p.theta);
    return p.x * std::exp(p.ell * (1.0 - p.x) * dir) + (1.0 - p.x) * std::exp(-p.ell * p.x * dir);
}

double two_point_objective(const TwoPointParams& params)
{
    check_params(params);
    return two_point_value(params).real();
}

TriangleSupport::TriangleSupport(Complex z1, Complex z2, Complex z3) : z_{z1, z2, z3}
{
    for (Complex z : z_) {
        if (!is_finite(z)) {
            throw DomainError("TriangleSupport: vertex is not finite");
        }
    }
    const double diam = diameter();
    if (!(std::abs(twice_area()) > kDegeneracy * diam * diam)) {
        throw DomainError("TriangleSupport: vertices are collinear");
    }
}

double TriangleSupport::diameter() const noexcept
{
    return std::max({std::abs(z_[0] - z_[1]), std::abs(z_[1] - z_[2]), std::abs(z_[2] - z_[0])});
}

double TriangleSupport::twice_area() const noexcept
{
    return geom::cross(z_[1] - z_[0], z_[2] - z_[0]);
}

TriangleSupport TriangleSupport::translated(Complex shift) const
{
    return TriangleSupport(z_[0] + shift, z_[1] + shift, z_[2] + shift);
}

std::array<double, 3> TriangleSupport::barycentric(Complex m) const noexcept
{
    std::array<double, 3> lam{};
    double total = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        lam[k] = geom::cross(z_[(k + 1) % 3] - m, z_[(k + 2) % 3] - m);
        total += lam[k];
    }
    for (double& l : lam) l /= total;
    return lam;
}

FiniteDistribution triangle_dist(const TriangleSupport& support, Complex target, BoundaryPolicy policy)
{
    auto lam = support.barycentric(target);
    const double smallest = *std::min_element(lam.begin(), lam.end());
    if (smallest < -kBoundaryTolerance) {
        throw DomainError("triangle_dist: target lies outside the triangle");
    }
    if (smallest <= 0.0 || (policy == BoundaryPolicy::allow && smallest <= kBoundaryTolerance)) {
        if (policy == BoundaryPolicy::reject) {
            throw DomainError("triangle_dist: target lies on the triangle boundary");
        }
        for (double& l : lam) l = l <= kBoundaryTolerance ? 0.0 : l;
    }
    return FiniteDistribution({Atom{support[0], lam[0]}, Atom{support[1], lam[1]},
                               Atom{support[2], lam[2]}});
}

ExpansionCoefficients expansion_coefficients(const TriangleSupport& support)
{
    const auto at_origin = support.barycentric(Complex{0.0, 0.0});
    if (*std::min_element(at_origin.begin(), at_origin.end()) < -kBoundaryTolerance) {
        throw DomainError("expansion_coefficients: origin is outside the triangle");
    }
    // lambda_k(x, y) = (cross(z_{k+1}, z_{k+2}) + x u.im - y u.re) / (2 area),
    // u = z_{k+1} - z_{k+2}.
    const double area2 = support.twice_area();
    ExpansionCoefficients out{};
    for (std::size_t k = 0; k < 3; ++k) {
        const Complex a = support[(k + 1) % 3];
        const Complex b = support[(k + 2) % 3];
        const Complex u = a - b;
        const Complex e = checked_exp(support[k]);
        out.C += (geom::cross(a, b) / area2) * e;
        out.A += (u.imag() / area2) * e;
        out.B += (-u.real() / area2) * e;
    }
    return out;
}

FrameFit stationary_frame(const ExpansionCoefficients& coeffs, Convention convention)
{
    const Complex I{0.0, 1.0};
    const Complex dx = coeffs.A - coeffs.C;
    const Complex dy = coeffs.B - I * coeffs.C;

    FrameFit fit;
    fit.frame.c0 = coeffs.C.real();
    fit.frame.c1 = coeffs.C.imag();
    fit.frame.delta = std::abs(coeffs.C - 1.0);

    if (convention == Convention::real_part) {
        fit.frame.v = dx.imag();
        fit.frame.w = dy.imag();
        fit.residual = std::hypot(dx.real(), dy.real());
        return fit;
    }

    if (fit.frame.delta == 0.0) {
        throw DomainError("stationary_frame: C = 1, the modulus frame is undefined");
    }
    const Complex dir = I * (coeffs.C - 1.0);
    const double norm2 = std::norm(dir);
    fit.frame.v = geom::dot(dx, dir) / norm2;
    fit.frame.w = geom::dot(dy, dir) / norm2;
    fit.residual = std::sqrt(std::norm(dx - fit.frame.v * dir) + std::norm(dy - fit.frame.w * dir));
    return fit;
}

double Sym2::min_eigenvalue() const noexcept
{
    return 0.5 * (xx + yy) - std::hypot(0.5 * (xx - yy), xy);
}

double Sym2::max_eigenvalue() const noexcept
{
    return 0.5 * (xx + yy) + std::hypot(0.5 * (xx - yy), xy);
}

Sym2 r_matrix(const StationaryFrame& f) noexcept
{
    return {-0.5 * f.c0, 0.5 * (f.c1 + f.v), 0.5 * f.c0 + f.w};
}

double r_min_eigenvalue(const StationaryFrame& f) noexcept
{
    return 0.5 * f.w - 0.5 * std::hypot(f.w + f.c0, f.v + f.c1);
}

Sym2 q_matrix(const StationaryFrame& f) noexcept
{
    const double D = f.delta;
    return {D * f.v * f.v + f.c0 - f.c1 * f.c1 - f.c0 * f.c0,
            D * f.v * f.w - f.c1,
            D * f.w * f.w + f.c0 - 1.0};
}

double q_trace_claim(const StationaryFrame& f) noexcept
{
    return f.delta * (f.v * f.v + f.w * f.w - 1.0);
}

double q_det_claim(const StationaryFrame& f) noexcept
{
    const double vw = f.v - f.w * f.c1;
    return f.delta * (-f.w * f.w * f.c0 * f.c0 - (1.0 - f.v * f.v - f.w * f.w) * f.c0 - vw * vw);
}

Sym2 q_matrix_expanded(const StationaryFrame& f) noexcept
{
    const double D2 = f.delta * f.delta;
    const double w1 = f.w + 1.0;
    return {D2 * f.v * f.v + f.c0 - f.c0 * f.c0 - f.c1 * f.c1,
            D2 * f.v * w1 - f.c1,
            D2 * w1 * w1 + f.c0 - 1.0};
}

StationaryFrame squared_delta_frame(const StationaryFrame& f) noexcept
{
    StationaryFrame out = f;
    out.w = f.w + 1.0;
    out.delta = f.delta * f.delta;
    return out;
}

double functional_value(const TriangleSupport& support, Functional functional, double x, double y)
{
    const Complex m{x, y};
    const FiniteDistribution dist = triangle_dist(support, m, BoundaryPolicy::allow);
    const Complex value = expect(dist, [m](Complex z) { return checked_exp(z - m); });
    if (functional == Functional::real_part) return value.real();
    return std::norm(value - 1.0);
}

Sym2 hessian_fd(const TriangleSupport& support, Functional functional, std::optional<double> step)
{
    const double h = step.value_or(1e-4 * support.diameter());
    if (!(h > 0.0)) {
        throw DomainError("hessian_fd: step must be positive");
    }
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const auto lam = support.barycentric(Complex{i * h, j * h});
            if (*std::min_element(lam.begin(), lam.end()) <= 0.0) {
                throw DomainError("hessian_fd: finite-difference stencil leaves the triangle");
            }
        }
    }
    auto f = [&](double x, double y) { return functional_value(support, functional, x, y); };
    const double f0 = f(0.0, 0.0);
    const double h2 = h * h;
    const double fxx = (f(h, 0.0) - 2.0 * f0 + f(-h, 0.0)) / h2;
    const double fyy = (f(0.0, h) - 2.0 * f0 + f(0.0, -h)) / h2;
    const double fxy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h2);
    return {0.5 * fxx, 0.5 * fxy, 0.5 * fyy};
}

}  // namespace cxh
