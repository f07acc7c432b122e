#include "cxh/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cxh/geometry.hpp"

namespace cxh {

namespace {

// Remaining mass below which peeling stops; what is left is rounding noise.
constexpr double kNegligibleMass = 1e-12;
// Mass that may be left unassigned when the live atoms no longer surround
// the origin.
constexpr double kResidualMass = 1e-9;

ZeroSimplex exact_subset(std::span<const Complex> pts)
{
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (pts[i] == Complex{0.0, 0.0}) return {{i}, {1.0}};
    }
    // Origin on a segment: the two points are exactly collinear with it and
    // on opposite sides.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (geom::cross_sign(pts[i], pts[j]) == 0 && geom::dot(pts[i], pts[j]) < 0.0) {
                const double ai = std::abs(pts[i]);
                const double aj = std::abs(pts[j]);
                return {{i, j}, {aj / (ai + aj), ai / (ai + aj)}};
            }
        }
    }
    // Origin strictly inside a triangle: all three edges see it on the same side.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int sij = geom::cross_sign(pts[i], pts[j]);
            if (sij == 0) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (geom::cross_sign(pts[j], pts[k]) != sij) continue;
                if (geom::cross_sign(pts[k], pts[i]) != sij) continue;
                // Weight of each vertex is proportional to the area of the
                // triangle formed by the origin and the other two.
                const double wi = std::abs(geom::cross(pts[j], pts[k]));
                const double wj = std::abs(geom::cross(pts[k], pts[i]));
                const double wk = std::abs(geom::cross(pts[i], pts[j]));
                const double total = wi + wj + wk;
                const Complex bary = (wi * pts[i] + wj * pts[j] + wk * pts[k]) / total;
                const double scale = std::max({std::abs(pts[i]), std::abs(pts[j]), std::abs(pts[k])});
                // Slivers lose the weights to cancellation; leave them to the segment fallback.
                if (!(total > 0.0) || !(std::abs(bary) <= 1e-12 * scale)) continue;
                return {{i, j, k}, {wi / total, wj / total, wk / total}};
            }
        }
    }
    return {};
}

}  // namespace

ZeroSimplex zero_simplex_subset(std::span<const Complex> points, double tolerance)
{
    if (points.empty()) {
        throw DomainError("zero_simplex_subset: no points");
    }
    ZeroSimplex found = exact_subset(points);
    if (!found.indices.empty()) return found;

    // Nearest segment to the origin.
    double scale = 0.0;
    for (Complex z : points) scale = std::max(scale, std::abs(z));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const Complex a = points[i];
            const Complex ab = points[j] - a;
            const double t = std::clamp(-geom::dot(a, ab) / std::norm(ab), 0.0, 1.0);
            const double dist = std::abs(a + t * ab);
            if (dist < best && t > 0.0 && t < 1.0) {
                best = dist;
                found = {{i, j}, {1.0 - t, t}};
            }
        }
    }
    if (found.indices.empty() || best > tolerance * scale) {
        throw DomainError("zero_simplex_subset: origin is not in the convex hull");
    }
    return found;
}

std::vector<double> MixtureDecomposition::weights() const
{
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.weight);
    return out;
}

std::vector<FiniteDistribution> MixtureDecomposition::dists() const
{
    std::vector<FiniteDistribution> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.dist);
    return out;
}

MixtureDecomposition decompose(const FiniteDistribution& dist)
{
    if (std::abs(mean(dist)) > 1e-10) {
        throw DomainError("decompose: distribution is not zero-mean");
    }

    std::vector<Complex> pts = dist.support();
    std::vector<double> mass;
    mass.reserve(pts.size());
    for (const Atom& a : dist.atoms()) mass.push_back(a.prob);

    MixtureDecomposition out;
    double remaining = 1.0;
    while (remaining > kNegligibleMass) {
        // Live atoms only.
        std::vector<std::size_t> live;
        std::vector<Complex> live_pts;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (mass[i] > 0.0) {
                live.push_back(i);
                live_pts.push_back(pts[i]);
            }
        }
        if (live.empty()) break;

        ZeroSimplex s;
        try {
            s = zero_simplex_subset(live_pts);
        } catch (const DomainError&) {
            // Leftover of a nearly collinear input, off the line by rounding.
            if (remaining <= kResidualMass) break;
            throw;
        }

        // Largest c with mass - c * q >= 0 on the subset.
        std::size_t argmin = 0;
        double c = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < s.indices.size(); ++k) {
            const double ratio = mass[live[s.indices[k]]] / s.weights[k];
            if (ratio < c) {
                c = ratio;
                argmin = k;
            }
        }

        std::vector<Atom> atoms;
        for (std::size_t k = 0; k < s.indices.size(); ++k) {
            const std::size_t idx = live[s.indices[k]];
            atoms.push_back({pts[idx], s.weights[k]});
            mass[idx] = k == argmin ? 0.0 : std::max(0.0, mass[idx] - c * s.weights[k]);
        }
        out.components.push_back({c, FiniteDistribution(std::move(atoms))});

        remaining = 0.0;
        for (double m : mass) remaining += m;
    }

    double total = 0.0;
    for (const auto& comp : out.components) total += comp.weight;
    for (auto& comp : out.components) comp.weight /= total;
    return out;
}

FiniteDistribution reconstruct(const MixtureDecomposition& decomposition)
{
    const auto w = decomposition.weights();
    const auto d = decomposition.dists();
    return mix(d, w);
}

}  // namespace cxh
