#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cxh/caratheodory.hpp"
#include "cxh/geometry.hpp"
#include "cxh/random_dist.hpp"

namespace {

using cxh::Complex;
using cxh::FiniteDistribution;

// Brute force: does some subset of at most three points hold the origin?
bool origin_in_some_simplex(const std::vector<Complex>& pts, const std::vector<std::size_t>& idx)
{
    if (idx.size() == 1) return pts[idx[0]] == Complex(0.0);
    if (idx.size() == 2) {
        return cxh::geom::cross(pts[idx[0]], pts[idx[1]]) == 0.0 && cxh::geom::dot(pts[idx[0]], pts[idx[1]]) < 0.0;
    }
    const double a = cxh::geom::cross(pts[idx[0]], pts[idx[1]]);
    const double b = cxh::geom::cross(pts[idx[1]], pts[idx[2]]);
    const double c = cxh::geom::cross(pts[idx[2]], pts[idx[0]]);
    return (a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0);
}

void expect_simplex(const std::vector<Complex>& pts, const cxh::ZeroSimplex& s)
{
    ASSERT_GE(s.indices.size(), 1u);
    ASSERT_LE(s.indices.size(), 3u);
    Complex sum{0.0, 0.0};
    double total = 0.0;
    for (std::size_t k = 0; k < s.indices.size(); ++k) {
        EXPECT_GT(s.weights[k], 0.0);
        sum += s.weights[k] * pts[s.indices[k]];
        total += s.weights[k];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_LE(std::abs(sum), 1e-12);
}

TEST(ZeroSimplex, Examples)
{
    const std::vector<Complex> with_zero{{1.0, 1.0}, {0.0, 0.0}, {-2.0, 0.0}};
    const auto a = cxh::zero_simplex_subset(with_zero);
    ASSERT_EQ(a.indices.size(), 1u);
    EXPECT_EQ(a.indices[0], 1u);
    EXPECT_EQ(a.weights[0], 1.0);

    const std::vector<Complex> seg{-1.0, 2.0};
    const auto b = cxh::zero_simplex_subset(seg);
    ASSERT_EQ(b.indices.size(), 2u);
    EXPECT_NEAR(b.weights[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(b.weights[1], 1.0 / 3.0, 1e-15);

    // 0 lies strictly inside the triangle {1, i, -1-i} and also on the
    // segment from -1-i to 5+5i; the segment is the smaller subset.
    const std::vector<Complex> quad{{1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}, {5.0, 5.0}};
    EXPECT_TRUE(origin_in_some_simplex(quad, {0, 1, 2}));
    EXPECT_TRUE(origin_in_some_simplex(quad, {2, 3}));
    const auto c = cxh::zero_simplex_subset(quad);
    EXPECT_TRUE(origin_in_some_simplex(quad, c.indices));
    EXPECT_LE(c.indices.size(), 2u);
    expect_simplex(quad, c);

    const std::vector<Complex> tri(quad.begin(), quad.begin() + 3);
    const auto t = cxh::zero_simplex_subset(tri);
    ASSERT_EQ(t.indices.size(), 3u);
    expect_simplex(tri, t);

    const std::vector<Complex> outside{{1.0, 0.0}, {2.0, 1.0}};
    EXPECT_THROW(cxh::zero_simplex_subset(outside), cxh::DomainError);
    EXPECT_THROW(cxh::zero_simplex_subset(std::vector<Complex>{}), cxh::DomainError);
}

TEST(ZeroSimplex, RandomSetsAgainstBruteForce)
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 2000; ++k) {
        const auto d = cxh::random_zero_mean(rng, 3 + k % 8, 2.0);
        const auto pts = d.support();
        const auto s = cxh::zero_simplex_subset(pts);
        expect_simplex(pts, s);
    }
}

TEST(Decompose, Examples)
{
    const FiniteDistribution tri({{{1.0, 0.0}, 0.25}, {{0.0, 2.0}, 0.25}, {{-0.5, -1.0}, 0.5}});
    const auto z = center(tri);
    const auto one = cxh::decompose(z);
    ASSERT_EQ(one.components.size(), 1u);
    EXPECT_NEAR(one.components[0].weight, 1.0, 1e-15);

    const std::vector<Complex> cross{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    const auto sym = FiniteDistribution::uniform(cross);
    const auto dec = cxh::decompose(sym);
    for (const auto& c : dec.components) {
        EXPECT_LE(c.dist.size(), 3u);
        EXPECT_LE(std::abs(mean(c.dist)), 1e-12);
    }
    const auto back = cxh::reconstruct(dec);
    ASSERT_EQ(back.size(), 4u);
    for (const auto& a : back.atoms()) EXPECT_NEAR(a.prob, 0.25, 1e-12);

    const FiniteDistribution col({{-2.0, 0.2}, {1.0, 0.4}, {0.0, 0.0}, {0.5, 0.4}});
    const auto cdec = cxh::decompose(center(col));
    EXPECT_EQ(cdec.components.size(), 2u);

    EXPECT_THROW(cxh::decompose(FiniteDistribution::point_mass(1.0)), cxh::DomainError);
}

TEST(Decompose, RandomProperties)
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10000; ++k) {
        const auto d = cxh::random_zero_mean(rng, 3 + k % 8, 0.1 + (k % 50) / 5.0);
        const auto dec = cxh::decompose(d);
        EXPECT_LE(dec.components.size(), d.size());
        double wsum = 0.0;
        Complex transported{0.0, 0.0};
        double bound = 0.0;
        for (const auto& c : dec.components) {
            EXPECT_GE(c.weight, 0.0);
            wsum += c.weight;
            EXPECT_LE(c.dist.size(), 3u);
            EXPECT_LE(std::abs(mean(c.dist)), 1e-9);
            EXPECT_LE(diameter(c.dist), diameter(d) * (1 + 1e-15));
            for (const auto& a : c.dist.atoms()) {
                const auto s = d.support();
                EXPECT_NE(std::find(s.begin(), s.end(), a.point), s.end());
            }
            transported += c.weight * expect_exp(c.dist);
            bound += c.weight * std::abs(expect_exp(c.dist) - 1.0);
        }
        EXPECT_NEAR(wsum, 1.0, 1e-10);
        EXPECT_LE(std::abs(expect_exp(d) - transported), 1e-10);
        EXPECT_LE(std::abs(expect_exp(d) - 1.0), bound + 1e-12);

        const auto back = cxh::reconstruct(dec);
        ASSERT_EQ(back.size(), d.size());
        for (const auto& a : d.atoms()) {
            const auto it = std::find_if(back.atoms().begin(), back.atoms().end(),
                                         [&](const cxh::Atom& b) { return b.point == a.point; });
            ASSERT_NE(it, back.atoms().end());
            EXPECT_NEAR(it->prob, a.prob, 1e-9);
        }
    }
}

TEST(Decompose, NearlyCollinearSupport)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const Complex dir = std::polar(1.0, 6.283185307179586 * u(rng));
        const FiniteDistribution d({{-(0.2 + u(rng)) * dir, 0.3}, {(u(rng) - 0.5) * 0.3 * dir, 0.3},
                                    {(0.2 + u(rng)) * dir, 0.4}});
        const auto z = center(d);
        const auto dec = cxh::decompose(z);
        EXPECT_LE(std::abs(expect_exp(z) - expect_exp(cxh::reconstruct(dec))), 1e-9);
    }
}

}  // namespace
