#pragma once

#include <span>
#include <vector>

#include "cxh/complex_dist.hpp"

namespace cxh::geom {

inline double cross(Complex a, Complex b) noexcept
{
    return a.real() * b.imag() - a.imag() * b.real();
}

inline double dot(Complex a, Complex b) noexcept
{
    return a.real() * b.real() + a.imag() * b.imag();
}

/// Exact sign of cross(a, b) = a.re*b.im - a.im*b.re (error-free
/// transformations, no rounding). Returns -1, 0 or +1.
int cross_sign(Complex a, Complex b) noexcept;

/// Convex hull by monotone chain, counterclockwise, no repeated first vertex.
/// Collinear boundary points are dropped.
std::vector<Complex> convex_hull(std::span<const Complex> points);

/// Shoelace area; positive for counterclockwise polygons. The polygon may
/// or may not repeat its first vertex at the end.
double signed_area(std::span<const Complex> polygon) noexcept;

/// Even-odd rule point-in-polygon test.
bool point_in_polygon(Complex p, std::span<const Complex> polygon) noexcept;

/// Distance from p to the closed segment [a, b].
double distance_to_segment(Complex p, Complex a, Complex b) noexcept;

/// Distance from p to the boundary of a closed polygon.
double distance_to_boundary(Complex p, std::span<const Complex> polygon) noexcept;

}  // namespace cxh::geom
