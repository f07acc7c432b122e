#include "cxh/complex_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cxh {

namespace {

constexpr double kSumTolerance = 1e-9;

// exp(709.78) is the largest finite double.
constexpr double kMaxExponent = 709.0;

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<Atom> atoms)
{
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!is_finite(a.point)) {
            throw DomainError("FiniteDistribution: support point is not finite");
        }
        if (!std::isfinite(a.prob) || a.prob < 0.0) {
            throw DomainError("FiniteDistribution: probabilities must be finite and non-negative");
        }
        total += a.prob;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw DomainError("FiniteDistribution: probabilities sum to " + std::to_string(total));
    }

    atoms_.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (a.prob == 0.0) continue;
        auto same = std::find_if(atoms_.begin(), atoms_.end(),
                                 [&](const Atom& b) { return b.point == a.point; });
        if (same != atoms_.end()) {
            same->prob += a.prob;
        } else {
            atoms_.push_back(a);
        }
    }
    if (atoms_.empty()) {
        throw DomainError("FiniteDistribution: no atom with positive probability");
    }
    for (Atom& a : atoms_) a.prob /= total;
}

FiniteDistribution FiniteDistribution::point_mass(Complex z)
{
    return FiniteDistribution({Atom{z, 1.0}});
}

FiniteDistribution FiniteDistribution::uniform(std::span<const Complex> points)
{
    std::vector<Atom> atoms;
    atoms.reserve(points.size());
    const double p = 1.0 / static_cast<double>(points.size());
    for (Complex z : points) atoms.push_back({z, p});
    return FiniteDistribution(std::move(atoms));
}

std::vector<Complex> FiniteDistribution::support() const
{
    std::vector<Complex> out;
    out.reserve(atoms_.size());
    for (const Atom& a : atoms_) out.push_back(a.point);
    return out;
}

Complex mean(const FiniteDistribution& dist)
{
    Complex acc{0.0, 0.0};
    for (const Atom& a : dist.atoms()) acc += a.prob * a.point;
    return acc;
}

FiniteDistribution center(const FiniteDistribution& dist)
{
    const Complex m = mean(dist);
    std::vector<Atom> shifted(dist.atoms().begin(), dist.atoms().end());
    for (Atom& a : shifted) a.point -= m;
    return FiniteDistribution(std::move(shifted));
}

double diameter(const FiniteDistribution& dist)
{
    const auto atoms = dist.atoms();
    double best = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            best = std::max(best, std::abs(atoms[i].point - atoms[j].point));
        }
    }
    return best;
}

Complex expect_exp(const FiniteDistribution& dist)
{
    Complex acc{0.0, 0.0};
    for (const Atom& a : dist.atoms()) {
        if (a.point.real() > kMaxExponent) {
            throw NumericalError("expect_exp: exponential overflows at Re z = " +
                                 std::to_string(a.point.real()));
        }
        acc += a.prob * std::exp(a.point);
    }
    if (!is_finite(acc)) {
        throw NumericalError("expect_exp: result is not finite");
    }
    return acc;
}

Complex moment(const FiniteDistribution& dist, int k)
{
    if (k < 1) {
        throw DomainError("moment: order must be a positive integer");
    }
    Complex acc{0.0, 0.0};
    for (const Atom& a : dist.atoms()) {
        Complex power = a.point;
        for (int i = 1; i < k; ++i) power *= a.point;
        acc += a.prob * power;
    }
    return acc;
}

FiniteDistribution mix(std::span<const FiniteDistribution> dists, std::span<const double> weights)
{
    if (dists.size() != weights.size()) {
        throw DomainError("mix: number of weights does not match number of distributions");
    }
    if (dists.empty()) {
        throw DomainError("mix: nothing to mix");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw DomainError("mix: weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("mix: weights sum to " + std::to_string(total));
    }

    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < dists.size(); ++j) {
        for (const Atom& a : dists[j].atoms()) {
            atoms.push_back({a.point, weights[j] * a.prob});
        }
    }
    return FiniteDistribution(std::move(atoms));
}

Disk enclosing_disk(const FiniteDistribution& dist)
{
    const auto pts = dist.support();
    return enclosing_disk(pts);
}

}  // namespace cxh
