#include "cxh/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/random/sobol.hpp>

#include "cxh/nelder_mead.hpp"
#include "cxh/parallel.hpp"

namespace cxh {

namespace {

constexpr double kPi = std::numbers::pi;

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dims() const { return lo.size(); }
};

// Cosine warp: u in R maps onto [lo, hi] with zero slope at both faces.
double warp(double u, double lo, double hi) noexcept
{
    return lo + (hi - lo) * 0.5 * (1.0 - std::cos(u));
}

double unwarp(double p, double lo, double hi) noexcept
{
    const double t = hi > lo ? std::clamp((p - lo) / (hi - lo), 0.0, 1.0) : 0.0;
    return std::acos(1.0 - 2.0 * t);
}

bool lexicographically_less(const std::vector<double>& a, const std::vector<double>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Lower value wins; equal values fall back to the smaller parameter vector.
bool better(double fa, const std::vector<double>& a, double fb, const std::vector<double>& b)
{
    if (fa != fb) return fa < fb;
    return lexicographically_less(a, b);
}

struct Seed {
    double value;
    std::vector<double> params;
};

// Seeds are evaluated in parallel blocks; the selection of the best few is
// a deterministic reduction over the full list.
std::vector<Seed> best_seeds(const std::vector<std::vector<double>>& points,
                             const std::function<double(std::span<const double>)>& f,
                             std::size_t keep, unsigned threads)
{
    std::vector<double> values(points.size());
    parallel_blocks(points.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) values[i] = f(points[i]);
    });

    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    keep = std::min(keep, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return better(values[a], points[a], values[b], points[b]);
                      });

    std::vector<Seed> out;
    out.reserve(keep);
    for (std::size_t k = 0; k < keep; ++k) out.push_back({values[order[k]], points[order[k]]});
    return out;
}

// Minimizes f over the box from the given seed points.
OptimizationResult multistart(const Box& box, const std::function<double(std::span<const double>)>& f,
                              const std::vector<std::vector<double>>& seed_points,
                              const SearchOptions& options)
{
    const std::size_t n = box.dims();
    const std::size_t starts = std::max<std::size_t>(1, options.polish_starts);
    const std::vector<Seed> seeds = best_seeds(seed_points, f, starts, options.threads);

    const std::size_t used = seed_points.size();
    const std::size_t remaining = options.budget > used ? options.budget - used : 0;
    const std::size_t per_start = std::max<std::size_t>(remaining / seeds.size(), 4 * (n + 1));

    std::vector<NelderMeadResult> polished(seeds.size());
    auto warped = [&](std::span<const double> u) {
        std::array<double, 8> p{};
        for (std::size_t k = 0; k < n; ++k) p[k] = warp(u[k], box.lo[k], box.hi[k]);
        return f(std::span<const double>(p.data(), n));
    };
    parallel_blocks(seeds.size(), options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            std::vector<double> u(n);
            for (std::size_t k = 0; k < n; ++k) u[k] = unwarp(seeds[s].params[k], box.lo[k], box.hi[k]);
            NelderMeadOptions nm;
            nm.max_evaluations = per_start;
            nm.initial_step = 0.15;
            polished[s] = nelder_mead(warped, u, nm);
        }
    });

    OptimizationResult result;
    result.evaluations = used;
    bool have = false;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        NelderMeadResult& r = polished[s];
        std::vector<double> params(n);
        for (std::size_t k = 0; k < n; ++k) params[k] = warp(r.x[k], box.lo[k], box.hi[k]);
        const double value = f(params);
        result.evaluations += r.evaluations + 1;
        result.refinement_history.push_back({value, params});
        if (!have || better(value, params, result.best_value, result.best_params)) {
            result.best_value = value;
            result.best_params = params;
            result.converged = r.converged;
            have = true;
        }
    }
    return result;
}

std::mt19937_64 seeded(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Tensor grid of cell centers, shifted as a whole by a seed-dependent offset
// (seed 0 gives exact cell centers).
std::vector<std::vector<double>> grid_seeds(const Box& box, std::size_t per_dim, std::uint64_t seed)
{
    const std::size_t n = box.dims();
    std::vector<double> shift(n, 0.5);
    if (seed != 0) {
        auto rng = seeded(seed);
        for (double& s : shift) s = unit(rng);
    }
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= per_dim;

    std::vector<std::vector<double>> pts(total, std::vector<double>(n));
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = (static_cast<double>(rest % per_dim) + shift[k]) / static_cast<double>(per_dim);
            rest /= per_dim;
            pts[i][k] = box.lo[k] + (box.hi[k] - box.lo[k]) * t;
        }
    }
    return pts;
}

// Sobol points with a seed-dependent Cranley-Patterson rotation.
std::vector<std::vector<double>> sobol_seeds(const Box& box, std::size_t count, std::uint64_t seed)
{
    const std::size_t n = box.dims();
    boost::random::sobol qrng(n);
    std::vector<double> shift(n, 0.0);
    if (seed != 0) {
        auto rng = seeded(seed);
        for (double& s : shift) s = unit(rng);
    }
    const double scale = 1.0 / (static_cast<double>(boost::random::sobol::max()) + 1.0);
    std::vector<std::vector<double>> pts(count, std::vector<double>(n));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            double t = static_cast<double>(qrng()) * scale + shift[k];
            if (t >= 1.0) t -= 1.0;
            pts[i][k] = box.lo[k] + (box.hi[k] - box.lo[k]) * t;
        }
    }
    return pts;
}

void check_diameter(double d, const char* who)
{
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError(std::string(who) + ": diameter must be positive and finite");
    }
}

Box two_point_box(double d)
{
    return {{0.0, 0.0, 0.0}, {d, 1.0, kPi}};
}

std::vector<std::vector<double>> two_point_seeds(const Box& box, const SearchOptions& options)
{
    std::size_t per_dim = 32;
    while (per_dim > 2 && per_dim * per_dim * per_dim > options.budget / 2) --per_dim;
    return grid_seeds(box, per_dim, options.seed);
}

TwoPointParams as_two_point(std::span<const double> p) noexcept
{
    return {p[0], p[1], p[2]};
}

void negate_result(OptimizationResult& r)
{
    r.best_value = -r.best_value;
    for (HistoryEntry& h : r.refinement_history) h.value = -h.value;
}

struct DecodedTriangle {
    std::array<Complex, 3> z;
    std::array<double, 3> p;
};

DecodedTriangle decode_three_point(std::span<const double> q, double d) noexcept
{
    double a = std::clamp(q[1], 0.0, 1.0);
    double b = std::clamp(q[2], 0.0, 1.0);
    if (a + b < 1.0) {
        const double fa = 1.0 - b;
        const double fb = 1.0 - a;
        a = fa;
        b = fb;
    }
    const double alpha = kPi * a;
    const double beta = kPi * b;
    const double gamma = 2.0 * kPi - alpha - beta;
    const double r1 = 1.0;
    const double r2 = std::clamp(q[3], 0.0, 1.0);
    const double r3 = std::clamp(q[4], 0.0, 1.0);

    const std::array<Complex, 3> w{std::polar(r1, q[0]), std::polar(r2, q[0] + alpha),
                                   std::polar(r3, q[0] + alpha + beta)};
    const double raw = std::max({std::abs(w[0] - w[1]), std::abs(w[1] - w[2]), std::abs(w[2] - w[0])});
    const double s = std::clamp(q[5], 0.0, 1.0) * d / raw;

    DecodedTriangle out;
    for (std::size_t k = 0; k < 3; ++k) out.z[k] = s * w[k];
    // Barycentric weights of the origin: each is proportional to the area
    // spanned by the other two vertices and the origin.
    out.p = {r2 * r3 * std::sin(beta), r3 * r1 * std::sin(gamma), r1 * r2 * std::sin(alpha)};
    for (double& p : out.p) p = std::max(p, 0.0);
    const double total = out.p[0] + out.p[1] + out.p[2];
    if (!(total > 1e-300)) {
        // All mass collapses onto the origin.
        out.p = {0.0, 0.0, 0.0};
        return out;
    }
    for (double& p : out.p) p /= total;
    return out;
}

Box three_point_box()
{
    return {{0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, {2.0 * kPi, 1.0, 1.0, 1.0, 1.0, 1.0}};
}

}  // namespace

OptimizationResult minimize_two_point_re(double d, const SearchOptions& options)
{
    check_diameter(d, "minimize_two_point_re");
    const Box box = two_point_box(d);
    auto f = [](std::span<const double> p) { return two_point_value(as_two_point(p)).real(); };
    return multistart(box, f, two_point_seeds(box, options), options);
}

OptimizationResult sup_abs_two_point(double d, const SearchOptions& options)
{
    check_diameter(d, "sup_abs_two_point");
    const Box box = two_point_box(d);
    auto f = [](std::span<const double> p) { return -std::abs(two_point_value(as_two_point(p)) - 1.0); };
    OptimizationResult r = multistart(box, f, two_point_seeds(box, options), options);
    negate_result(r);
    return r;
}

Complex three_point_value(std::span<const double> params, double d) noexcept
{
    const DecodedTriangle t = decode_three_point(params, d);
    if (t.p[0] + t.p[1] + t.p[2] == 0.0) return Complex{1.0, 0.0};
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k) acc += t.p[k] * std::exp(t.z[k]);
    return acc;
}

FiniteDistribution three_point(std::span<const double> params, double d)
{
    if (params.size() != kThreePointDims) {
        throw DomainError("three_point: expected six parameters");
    }
    check_diameter(d, "three_point");
    const DecodedTriangle t = decode_three_point(params, d);
    if (t.p[0] + t.p[1] + t.p[2] == 0.0) return FiniteDistribution::point_mass(Complex{0.0, 0.0});
    return FiniteDistribution({Atom{t.z[0], t.p[0]}, Atom{t.z[1], t.p[1]}, Atom{t.z[2], t.p[2]}});
}

OptimizationResult sup_abs_three_point(double d, const SearchOptions& options)
{
    check_diameter(d, "sup_abs_three_point");
    const Box box = three_point_box();
    auto f = [d](std::span<const double> p) { return -std::abs(three_point_value(p, d) - 1.0); };
    const std::size_t count = std::max<std::size_t>(64, options.budget / 2);
    OptimizationResult r = multistart(box, f, sobol_seeds(box, count, options.seed), options);
    negate_result(r);
    return r;
}

D0Result compute_d0(double tolerance, const SearchOptions& options)
{
    if (!(tolerance >= 1e-9)) {
        throw DomainError("compute_d0: tolerance must be at least 1e-9");
    }
    auto infimum = [&](double d, double width) {
        SearchOptions opts = options;
        if (width < 1e-3) opts.budget *= 2;
        return minimize_two_point_re(d, opts).best_value;
    };

    D0Result out;
    out.tolerance = tolerance;
    double lo = kPi / 2.0;
    double hi = 4.0;
    if (!(infimum(lo, hi - lo) > 0.0) || !(infimum(hi, hi - lo) < 0.0)) {
        throw NumericalError("compute_d0: no sign change of the two-point infimum on [pi/2, 4]");
    }
    out.brackets.emplace_back(lo, hi);
    while (hi - lo > 2.0 * tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (infimum(mid, hi - lo) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        out.brackets.emplace_back(lo, hi);
    }
    out.lo = lo;
    out.hi = hi;
    out.d0 = 0.5 * (lo + hi);

    SearchOptions opts = options;
    opts.budget *= 2;
    const OptimizationResult at_root = minimize_two_point_re(out.d0, opts);
    out.extremal = as_two_point(at_root.best_params);
    if (out.extremal.x < 0.5) {
        out.extremal.x = 1.0 - out.extremal.x;
        out.extremal.theta = kPi - out.extremal.theta;
    }
    out.extremal_value = at_root.best_value;
    return out;
}

namespace {

struct Derivatives {
    double g[2];
    double h[3];  // xx, xy, yy
};

Derivatives functional_derivatives(const ExpansionCoefficients& c, Functional functional, double x, double y)
{
    const Complex I{0.0, 1.0};
    const Complex e = std::exp(-Complex{x, y});
    const Complex L = c.A * x + c.B * y + c.C;
    const Complex F = e * L;
    const Complex Fx = e * (c.A - L);
    const Complex Fy = e * (c.B - I * L);
    const Complex Fxx = e * (L - 2.0 * c.A);
    const Complex Fxy = e * (I * L - I * c.A - c.B);
    const Complex Fyy = e * (-L - 2.0 * I * c.B);

    Derivatives out{};
    if (functional == Functional::real_part) {
        out.g[0] = Fx.real();
        out.g[1] = Fy.real();
        out.h[0] = Fxx.real();
        out.h[1] = Fxy.real();
        out.h[2] = Fyy.real();
        return out;
    }
    const Complex D = std::conj(F - 1.0);
    out.g[0] = 2.0 * (D * Fx).real();
    out.g[1] = 2.0 * (D * Fy).real();
    out.h[0] = 2.0 * (std::norm(Fx) + (D * Fxx).real());
    out.h[1] = 2.0 * ((std::conj(Fx) * Fy).real() + (D * Fxy).real());
    out.h[2] = 2.0 * (std::norm(Fy) + (D * Fyy).real());
    return out;
}

}  // namespace

std::vector<TriangleSupport> stationary_supports(const TriangleSupport& support, Functional functional)
{
    // Work in a frame centred on the centroid so the origin is inside.
    const Complex centroid = (support[0] + support[1] + support[2]) / 3.0;
    const TriangleSupport local = support.translated(-centroid);
    const ExpansionCoefficients coeffs = expansion_coefficients(local);
    const double scale = local.diameter();

    std::vector<Complex> found;
    constexpr int kGrid = 7;
    for (int i = 1; i < kGrid; ++i) {
        for (int j = 1; i + j < kGrid; ++j) {
            const double l0 = static_cast<double>(i) / kGrid;
            const double l1 = static_cast<double>(j) / kGrid;
            Complex m = l0 * local[0] + l1 * local[1] + (1.0 - l0 - l1) * local[2];

            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                const Derivatives dv = functional_derivatives(coeffs, functional, m.real(), m.imag());
                const double det = dv.h[0] * dv.h[2] - dv.h[1] * dv.h[1];
                if (det == 0.0 || !std::isfinite(det)) break;
                const double sx = -(dv.h[2] * dv.g[0] - dv.h[1] * dv.g[1]) / det;
                const double sy = -(dv.h[0] * dv.g[1] - dv.h[1] * dv.g[0]) / det;
                Complex step{sx, sy};
                const double len = std::abs(step);
                if (len > 0.25 * scale) step *= 0.25 * scale / len;
                m += step;
                const auto lam = local.barycentric(m);
                if (*std::min_element(lam.begin(), lam.end()) < -0.5) break;
                if (std::abs(step) <= 1e-13 * scale) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;
            const auto lam = local.barycentric(m);
            if (*std::min_element(lam.begin(), lam.end()) < 1e-3) continue;
            const bool duplicate = std::any_of(found.begin(), found.end(), [&](Complex f) {
                return std::abs(f - m) <= 1e-8 * scale;
            });
            if (!duplicate) found.push_back(m);
        }
    }

    std::sort(found.begin(), found.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    std::vector<TriangleSupport> out;
    out.reserve(found.size());
    for (Complex m : found) out.push_back(local.translated(-m));
    return out;
}

}  // namespace cxh
