#include "cxh/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace cxh::geom {

namespace {

struct TwoSum {
    double hi;
    double lo;
};

TwoSum two_sum(double a, double b) noexcept
{
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

TwoSum two_product(double a, double b) noexcept
{
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Sign of an exactly represented sum of doubles. Builds a non-overlapping
// expansion (Shewchuk's grow-expansion) and reads the sign of its most
// significant non-zero component.
template <std::size_t N>
int exact_sum_sign(const std::array<double, N>& terms) noexcept
{
    std::array<double, N> expansion{};
    std::size_t len = 0;
    for (double t : terms) {
        double q = t;
        for (std::size_t i = 0; i < len; ++i) {
            const TwoSum s = two_sum(q, expansion[i]);
            expansion[i] = s.lo;
            q = s.hi;
        }
        expansion[len++] = q;
    }
    for (std::size_t i = len; i-- > 0;) {
        if (expansion[i] > 0.0) return 1;
        if (expansion[i] < 0.0) return -1;
    }
    return 0;
}

Disk disk_from(Complex a, Complex b) noexcept
{
    const Complex c = 0.5 * (a + b);
    return {c, std::max(std::abs(a - c), std::abs(b - c))};
}

Disk disk_from(Complex a, Complex b, Complex c) noexcept
{
    const Complex ba = b - a;
    const Complex ca = c - a;
    const double denom = 2.0 * cross(ba, ca);
    const double scale = std::max({std::norm(ba), std::norm(ca), std::norm(b - c)});
    if (std::abs(denom) <= 1e-14 * scale) {
        // Numerically collinear: the disk on the longest side covers all three.
        Disk best = disk_from(a, b);
        for (const Disk& d : {disk_from(a, c), disk_from(b, c)}) {
            if (d.radius > best.radius) best = d;
        }
        return best;
    }
    const double nb = std::norm(ba);
    const double nc = std::norm(ca);
    const Complex u{(ca.imag() * nb - ba.imag() * nc) / denom,
                    (ba.real() * nc - ca.real() * nb) / denom};
    const Complex center = a + u;
    const double r = std::max({std::abs(a - center), std::abs(b - center), std::abs(c - center)});
    return {center, r};
}

bool inside(const Disk& d, Complex p) noexcept
{
    return std::abs(p - d.center) <= d.radius * (1.0 + 1e-14) + 1e-300;
}

}  // namespace

int cross_sign(Complex a, Complex b) noexcept
{
    const TwoSum p = two_product(a.real(), b.imag());
    const TwoSum q = two_product(a.imag(), b.real());
    return exact_sum_sign(std::array<double, 4>{p.lo, q.lo * -1.0, p.hi, -q.hi});
}

std::vector<Complex> convex_hull(std::span<const Complex> points)
{
    std::vector<Complex> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Complex& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        const Complex& p = pts[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

double signed_area(std::span<const Complex> polygon) noexcept
{
    const std::size_t n = polygon.size();
    if (n < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += cross(polygon[i], polygon[(i + 1) % n]);
    }
    return 0.5 * acc;
}

bool point_in_polygon(Complex p, std::span<const Complex> polygon) noexcept
{
    bool in = false;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Complex a = polygon[i];
        const Complex b = polygon[j];
        if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
            const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) /
                                            (b.imag() - a.imag());
            if (p.real() < x) in = !in;
        }
    }
    return in;
}

double distance_to_segment(Complex p, Complex a, Complex b) noexcept
{
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double distance_to_boundary(Complex p, std::span<const Complex> polygon) noexcept
{
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, distance_to_segment(p, polygon[i], polygon[(i + 1) % n]));
    }
    return best;
}

}  // namespace cxh::geom

namespace cxh {

// Randomized incremental minimal enclosing disk (Welzl). The
// permutation comes from a fixed-seed generator so results are reproducible.
Disk enclosing_disk(std::span<const Complex> points)
{
    if (points.empty()) {
        throw DomainError("enclosing_disk: empty point set");
    }
    std::vector<Complex> p(points.begin(), points.end());
    std::mt19937_64 rng(0x5eed);
    for (std::size_t i = p.size(); i > 1; --i) {
        std::swap(p[i - 1], p[rng() % i]);
    }

    Disk d{p[0], 0.0};
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (geom::inside(d, p[i])) continue;
        d = {p[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (geom::inside(d, p[j])) continue;
            d = geom::disk_from(p[i], p[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (geom::inside(d, p[k])) continue;
                d = geom::disk_from(p[i], p[j], p[k]);
            }
        }
    }
    return d;
}

}  // namespace cxh
