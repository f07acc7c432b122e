#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cxh/caratheodory.hpp"
#include "cxh/families.hpp"
#include "cxh/search.hpp"
#include "oracle.hpp"

namespace {

using cxh::Complex;
using cxh::Sym2;
using cxh::TriangleSupport;

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

TriangleSupport equilateral(double side, double rotation = 0.0)
{
    const double r = side / std::sqrt(3.0);
    return TriangleSupport(std::polar(r, rotation), std::polar(r, rotation + 2 * kPi / 3),
                           std::polar(r, rotation + 4 * kPi / 3));
}

TriangleSupport random_triangle(std::mt19937_64& rng, double scale)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const Complex a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        const double area2 = std::abs((b - a).real() * (c - a).imag() - (b - a).imag() * (c - a).real());
        if (area2 < 0.2) continue;
        const Complex g = (a + b + c) / 3.0;
        return TriangleSupport(scale * (a - g), scale * (b - g), scale * (c - g));
    }
}

TEST(TwoPoint, Examples)
{
    for (double x : {0.0, 1.0}) {
        const auto d = cxh::two_point({2.0, x, 0.7});
        ASSERT_EQ(d.size(), 1u);
        EXPECT_EQ(d.atoms()[0].point, Complex(0.0));
    }
    const auto s = cxh::two_point({2.0, 0.5, 0.0});
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(std::abs(s.atoms()[0].point + s.atoms()[1].point), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(std::abs(s.atoms()[0].point.real()) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(s.atoms()[0].point.imag(), 0.0);
    EXPECT_DOUBLE_EQ(s.atoms()[0].prob, 0.5);
    EXPECT_NEAR(diameter(s), 2.0, 1e-15);
    EXPECT_THROW(cxh::two_point({-1.0, 0.5, 0.0}), cxh::DomainError);
    EXPECT_THROW(cxh::two_point({1.0, 1.5, 0.0}), cxh::DomainError);
}

TEST(TwoPoint, Invariants)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 10000; ++k) {
        const cxh::TwoPointParams p{10 * u(rng), u(rng), 2 * kPi * u(rng) - kPi};
        const auto d = cxh::two_point(p);
        EXPECT_LE(std::abs(mean(d)), 1e-12 * std::max(1.0, p.ell));
        if (d.size() == 2) EXPECT_NEAR(diameter(d), p.ell, 1e-12 * std::max(1.0, p.ell));
        const double direct = p.x * std::exp(p.ell * (1 - p.x) * std::cos(p.theta)) *
                                  std::cos(p.ell * (1 - p.x) * std::sin(p.theta)) +
                              (1 - p.x) * std::exp(-p.ell * p.x * std::cos(p.theta)) *
                                  std::cos(p.ell * p.x * std::sin(p.theta));
        EXPECT_NEAR(cxh::two_point_objective(p), direct, 1e-13 * std::max(1.0, std::abs(direct)));
    }
}

TEST(TwoPointObjective, Examples)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) EXPECT_GE(cxh::two_point_objective({5 * u(rng), u(rng), 0.0}), 1.0);
    EXPECT_EQ(cxh::two_point_objective({0.0, 0.3, 1.0}), 1.0);
    EXPECT_NEAR(cxh::two_point_objective({3.120491233, 0.636527202, 1.9198934984}), 0.0, 1e-6);
}

TEST(Triangle, RejectsCollinear)
{
    EXPECT_THROW(TriangleSupport(0.0, 1.0, 2.0), cxh::DomainError);
    EXPECT_THROW(TriangleSupport(0.0, 1.0, Complex(2.0, 1e-12)), cxh::DomainError);
    EXPECT_NO_THROW(TriangleSupport(0.0, 1.0, Complex(2.0, 1e-3)));
}

TEST(TriangleDist, Examples)
{
    const auto eq = cxh::triangle_dist(equilateral(1.0), 0.0);
    ASSERT_EQ(eq.size(), 3u);
    for (const auto& a : eq.atoms()) EXPECT_NEAR(a.prob, 1.0 / 3.0, 1e-15);

    const auto tri = equilateral(1.0, 0.4);
    const auto vertex = cxh::triangle_dist(tri, tri[0], cxh::BoundaryPolicy::allow);
    ASSERT_EQ(vertex.size(), 1u);
    EXPECT_EQ(vertex.atoms()[0].point, tri[0]);
    EXPECT_THROW(cxh::triangle_dist(tri, tri[0]), cxh::DomainError);
    EXPECT_THROW(cxh::triangle_dist(tri, 10.0, cxh::BoundaryPolicy::allow), cxh::DomainError);
    const auto edge = cxh::triangle_dist(tri, (tri[0] + tri[1]) / 2.0, cxh::BoundaryPolicy::allow);
    EXPECT_LE(edge.size(), 2u);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const auto t = random_triangle(rng, 2.0);
        double a = u(rng), b = u(rng);
        if (a + b > 1) {
            a = 1 - a;
            b = 1 - b;
        }
        const Complex m = a * t[0] + b * t[1] + (1 - a - b) * t[2];
        EXPECT_LE(std::abs(mean(cxh::triangle_dist(t, m)) - m), 1e-12);
    }
}

TEST(ExpansionCoefficients, AffineExactness)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const auto t = random_triangle(rng, 0.5 + 3 * u(rng));
        const auto c = cxh::expansion_coefficients(t);
        EXPECT_LE(std::abs(c.C - expect_exp(cxh::triangle_dist(t, 0.0))), 1e-12 * std::abs(c.C));
        for (int j = 0; j < 2; ++j) {
            double a = u(rng), b = u(rng);
            if (a + b > 1) {
                a = 1 - a;
                b = 1 - b;
            }
            const Complex m = a * t[0] + b * t[1] + (1 - a - b) * t[2];
            const Complex want = expect_exp(cxh::triangle_dist(t, m));
            EXPECT_LE(std::abs(c.A * m.real() + c.B * m.imag() + c.C - want), 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(ExpansionCoefficients, Translation)
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const auto t = random_triangle(rng, 2.0);
        const Complex shift{0.02 * (k % 5) - 0.04, 0.01 * (k % 7) - 0.03};
        const auto lam = t.barycentric(-shift);
        if (*std::min_element(lam.begin(), lam.end()) <= 0.0) continue;
        const auto moved = t.translated(shift);
        // The zero-mean point of the moved support is the old mean -shift.
        const auto probs = cxh::triangle_dist(t, -shift);
        Complex want{0.0, 0.0};
        for (const auto& a : probs.atoms()) want += a.prob * std::exp(a.point + shift);
        EXPECT_LE(std::abs(cxh::expansion_coefficients(moved).C - want), 1e-12 * std::abs(want));
    }
}

TEST(ExpansionCoefficients, RequiresOriginInHull)
{
    const TriangleSupport t(Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(1.5, 1.0));
    EXPECT_THROW(cxh::expansion_coefficients(t), cxh::DomainError);
}

TEST(StationaryFrame, ConstructedInputs)
{
    const Complex C{0.7, 0.2};
    const cxh::ExpansionCoefficients mod{C + kI * 0.3 * (C - 1.0), kI * C + kI * (-0.2) * (C - 1.0), C};
    const auto fit = cxh::stationary_frame(mod, cxh::Convention::modulus);
    EXPECT_NEAR(fit.frame.v, 0.3, 1e-14);
    EXPECT_NEAR(fit.frame.w, -0.2, 1e-14);
    EXPECT_NEAR(fit.residual, 0.0, 1e-14);
    EXPECT_NEAR(fit.frame.delta, std::abs(C - 1.0), 1e-12);
    EXPECT_NEAR(fit.frame.c0, 0.7, 0.0);
    EXPECT_NEAR(fit.frame.c1, 0.2, 0.0);

    const cxh::ExpansionCoefficients re{C + kI * 0.4, kI * C + kI * 1.5, C};
    const auto rf = cxh::stationary_frame(re, cxh::Convention::real_part);
    EXPECT_NEAR(rf.frame.v, 0.4, 1e-14);
    EXPECT_NEAR(rf.frame.w, 1.5, 1e-14);
    EXPECT_NEAR(rf.residual, 0.0, 1e-14);

    const cxh::ExpansionCoefficients generic{{0.3, 0.8}, {-1.1, 0.4}, C};
    EXPECT_GT(cxh::stationary_frame(generic, cxh::Convention::modulus).residual, 1e-3);
    EXPECT_GT(cxh::stationary_frame(generic, cxh::Convention::real_part).residual, 1e-3);

    const cxh::ExpansionCoefficients one{{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}};
    EXPECT_THROW(cxh::stationary_frame(one, cxh::Convention::modulus), cxh::DomainError);
}

TEST(RMatrix, Examples)
{
    cxh::StationaryFrame f;
    f.c0 = 1.0;
    const Sym2 r = cxh::r_matrix(f);
    EXPECT_DOUBLE_EQ(r.xx, -0.5);
    EXPECT_DOUBLE_EQ(r.xy, 0.0);
    EXPECT_DOUBLE_EQ(r.yy, 0.5);
    EXPECT_DOUBLE_EQ(cxh::r_min_eigenvalue(f), -0.5);
}

TEST(RMatrix, EigenvalueAgainstEigensolve)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 10000; ++k) {
        cxh::StationaryFrame f;
        f.v = u(rng);
        f.w = u(rng);
        f.c0 = u(rng);
        f.c1 = u(rng);
        const Sym2 r = cxh::r_matrix(f);
        const double want = oracle::min_eigenvalue(r.xx, r.xy, r.yy);
        EXPECT_NEAR(cxh::r_min_eigenvalue(f), want, 1e-12 * std::max(1.0, std::abs(want)));
        EXPECT_NEAR(r.min_eigenvalue(), want, 1e-12 * std::max(1.0, std::abs(want)));
        if (f.c0 > 0.0) EXPECT_LT(cxh::r_min_eigenvalue(f), 0.0);
    }
}

TEST(QMatrix, Examples)
{
    cxh::StationaryFrame f;
    f.c0 = 1.0;
    const Sym2 q = cxh::q_matrix(f);
    EXPECT_EQ(q.xx, 0.0);
    EXPECT_EQ(q.xy, 0.0);
    EXPECT_EQ(q.yy, 0.0);
}

TEST(QMatrix, ReadingWithSquaredDeltaMatchesExpansion)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 1000; ++k) {
        cxh::StationaryFrame f;
        f.v = u(rng);
        f.w = u(rng);
        f.c0 = u(rng);
        f.c1 = u(rng);
        f.delta = std::hypot(f.c0 - 1.0, f.c1);
        const Sym2 a = cxh::q_matrix(cxh::squared_delta_frame(f));
        const Sym2 b = cxh::q_matrix_expanded(f);
        EXPECT_NEAR(a.xx, b.xx, 1e-12 * (1 + std::abs(b.xx)));
        EXPECT_NEAR(a.xy, b.xy, 1e-12 * (1 + std::abs(b.xy)));
        EXPECT_NEAR(a.yy, b.yy, 1e-12 * (1 + std::abs(b.yy)));
    }
}

TEST(HessianFd, ValueAndSymmetry)
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 50; ++k) {
        const auto t = random_triangle(rng, 2.0);
        const auto c = cxh::expansion_coefficients(t);
        EXPECT_NEAR(cxh::functional_value(t, cxh::Functional::modulus_squared, 0.0, 0.0), std::norm(c.C - 1.0), 1e-12);
        EXPECT_NEAR(cxh::functional_value(t, cxh::Functional::real_part, 0.0, 0.0), c.C.real(), 1e-12);
        const Sym2 h = cxh::hessian_fd(t, cxh::Functional::real_part);
        EXPECT_TRUE(std::isfinite(h.xy));
    }
    EXPECT_THROW(cxh::hessian_fd(equilateral(1.0), cxh::Functional::real_part, 1.0), cxh::DomainError);
}

TEST(HessianFd, MatchesRAtStationarySupports)
{
    std::mt19937_64 rng(9);
    std::size_t found = 0;
    for (int k = 0; k < 80 && found < 10; ++k) {
        const auto t = random_triangle(rng, 1.5 + (k % 4));
        for (const auto& s : cxh::stationary_supports(t, cxh::Functional::real_part)) {
            const auto fit = cxh::stationary_frame(cxh::expansion_coefficients(s), cxh::Convention::real_part);
            ASSERT_LT(fit.residual, 1e-6);
            if (fit.residual >= 1e-8) continue;
            const double step = 1e-4 * s.diameter();
            Sym2 h;
            try {
                h = cxh::hessian_fd(s, cxh::Functional::real_part, step);
            } catch (const cxh::DomainError&) {
                continue;
            }
            const Sym2 r = cxh::r_matrix(fit.frame);
            const double tol = std::max(1e-4, 10 * step * step);
            EXPECT_NEAR(h.xx, r.xx, tol);
            EXPECT_NEAR(h.xy, r.xy, tol);
            EXPECT_NEAR(h.yy, r.yy, tol);
            ++found;
        }
    }
    EXPECT_GT(found, 0u);
}

TEST(HessianFd, ModulusMatchesExpandedQ)
{
    std::mt19937_64 rng(10);
    std::size_t found = 0;
    for (int k = 0; k < 80 && found < 10; ++k) {
        const auto t = random_triangle(rng, 1.5 + (k % 4));
        for (const auto& s : cxh::stationary_supports(t, cxh::Functional::modulus_squared)) {
            const auto fit = cxh::stationary_frame(cxh::expansion_coefficients(s), cxh::Convention::modulus);
            if (fit.residual >= 1e-8 || fit.frame.delta < 1e-3) continue;
            Sym2 h;
            try {
                h = cxh::hessian_fd(s, cxh::Functional::modulus_squared);
            } catch (const cxh::DomainError&) {
                continue;
            }
            const Sym2 q = cxh::q_matrix_expanded(fit.frame);
            const double scale = 1.0 + std::abs(q.xx) + std::abs(q.yy);
            EXPECT_NEAR(h.xx, q.xx, 1e-4 * scale);
            EXPECT_NEAR(h.xy, q.xy, 1e-4 * scale);
            EXPECT_NEAR(h.yy, q.yy, 1e-4 * scale);
            ++found;
        }
    }
    EXPECT_GT(found, 0u);
}

TEST(Families, CollinearThreePointIsTwoPointMixture)
{
    const Complex dir = std::polar(1.0, 0.7);
    const cxh::FiniteDistribution d({{-1.0 * dir, 0.3}, {0.5 * dir, 0.4}, {1.0 * dir, 0.3}});
    const auto z = center(d);
    const auto dec = cxh::decompose(z);
    EXPECT_EQ(dec.components.size(), 2u);
    for (const auto& c : dec.components) EXPECT_EQ(c.dist.size(), 2u);
}

}  // namespace
