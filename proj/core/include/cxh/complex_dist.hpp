#pragma once

// Finite-support complex random variables.
//
// Every random variable in this library is a FiniteDistribution: an ordered
// list of distinct complex atoms with strictly positive probabilities that
// sum to one. All expectations are exact finite sums.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cxh/error.hpp"

namespace cxh {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

struct Atom {
    Complex point;
    double prob = 0.0;
};

class FiniteDistribution {
public:
    /// Probability sums within 1e-9 of one are renormalized; anything
    /// further off is rejected. Zero-probability atoms are dropped and
    /// atoms with bit-identical coordinates are merged.
    explicit FiniteDistribution(std::vector<Atom> atoms);

    static FiniteDistribution point_mass(Complex z);
    static FiniteDistribution uniform(std::span<const Complex> points);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    std::vector<Complex> support() const;

private:
    std::vector<Atom> atoms_;
};

struct Disk {
    Complex center;
    double radius = 0.0;

    bool contains(Complex z, double tol = 0.0) const noexcept
    {
        return std::abs(z - center) <= radius + tol;
    }
};

Complex mean(const FiniteDistribution& dist);

/// Translates the support so the mean is zero.
FiniteDistribution center(const FiniteDistribution& dist);

/// Largest pairwise distance between support points.
double diameter(const FiniteDistribution& dist);

/// E F(Z). Throws NumericalError if F is not finite on the support.
template <class F>
Complex expect(const FiniteDistribution& dist, F&& fn)
{
    Complex acc{0.0, 0.0};
    for (const Atom& a : dist.atoms()) {
        const Complex v = fn(a.point);
        if (!is_finite(v)) {
            throw NumericalError("expect: function is not finite at a support point");
        }
        acc += a.prob * v;
    }
    return acc;
}

/// E e^Z. Throws NumericalError when an exponential overflows.
Complex expect_exp(const FiniteDistribution& dist);

/// E Z^k by repeated multiplication.
Complex moment(const FiniteDistribution& dist, int k);

/// Mixture sum_j weights[j] * dists[j].
FiniteDistribution mix(std::span<const FiniteDistribution> dists, std::span<const double> weights);

/// Smallest closed disk containing the support.
Disk enclosing_disk(const FiniteDistribution& dist);
Disk enclosing_disk(std::span<const Complex> points);

}  // namespace cxh
