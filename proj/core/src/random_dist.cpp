#include "cxh/random_dist.hpp"

#include <cmath>
#include <numbers>

namespace cxh {

namespace {

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n)
{
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) {
        x = expo(rng) + 1e-3;
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

FiniteDistribution rescale(const FiniteDistribution& dist, double diam)
{
    const FiniteDistribution c = center(dist);
    const double current = diameter(c);
    if (current == 0.0) return FiniteDistribution::point_mass(Complex{0.0, 0.0});
    const double s = diam / current;
    std::vector<Atom> atoms;
    atoms.reserve(c.size());
    for (const Atom& a : c.atoms()) atoms.push_back({a.point * s, a.prob});
    return FiniteDistribution(std::move(atoms));
}

}  // namespace

FiniteDistribution random_distribution(std::mt19937_64& rng, std::size_t atoms)
{
    if (atoms == 0) throw DomainError("random_distribution: need at least one atom");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<double> p = dirichlet(rng, atoms);
    std::vector<Atom> out;
    out.reserve(atoms);
    for (std::size_t k = 0; k < atoms; ++k) {
        const double r = std::sqrt(unit(rng));
        const double t = 2.0 * std::numbers::pi * unit(rng);
        out.push_back({std::polar(r, t), p[k]});
    }
    return FiniteDistribution(std::move(out));
}

FiniteDistribution random_zero_mean(std::mt19937_64& rng, std::size_t atoms, double diam)
{
    return rescale(random_distribution(rng, atoms), diam);
}

FiniteDistribution random_real_zero_mean(std::mt19937_64& rng, std::size_t atoms, double diam)
{
    if (atoms == 0) throw DomainError("random_real_zero_mean: need at least one atom");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::vector<double> p = dirichlet(rng, atoms);
    std::vector<Atom> out;
    out.reserve(atoms);
    for (std::size_t k = 0; k < atoms; ++k) out.push_back({Complex{unit(rng), 0.0}, p[k]});
    return rescale(FiniteDistribution(std::move(out)), diam);
}

}  // namespace cxh
