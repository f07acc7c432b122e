#include "cxh/bounds.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cxh {

namespace {

// e^a - 1 - a without cancellation for |a| < 1.
double expm1_minus_linear(double a)
{
    if (std::abs(a) >= 1.0) return std::expm1(a) - a;
    double term = a * a / 2.0;
    double sum = term;
    for (int k = 3; k < 40 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
        term *= a / k;
        sum += term;
    }
    return sum;
}

}  // namespace

double envelope(double d)
{
    if (!(d >= 0.0)) {
        throw DomainError("envelope: diameter must be non-negative");
    }
    return std::expm1(d * d / 8.0);
}

double extremal_probability(double d)
{
    if (!(d > 0.0)) {
        throw DomainError("extremal_probability: diameter must be positive");
    }
    if (d < kGSeriesThreshold) {
        const double d2 = d * d;
        return 0.5 - d / 12.0 + d * d2 / 720.0 - d * d2 * d2 / 30240.0;
    }
    if (d <= 1.0) {
        return expm1_minus_linear(d) / (d * std::expm1(d));
    }
    // Divide through by e^d so large d does not overflow.
    const double emd = std::exp(-d);
    return (1.0 - (1.0 + d) * emd) / (d * -std::expm1(-d));
}

double g_function(double d)
{
    if (!(d >= 0.0)) {
        throw DomainError("g_function: diameter must be non-negative");
    }
    if (d < kGSeriesThreshold) {
        const double d2 = d * d;
        return d2 / 8.0 + 7.0 * d2 * d2 / 1152.0;
    }
    const double p = extremal_probability(d);
    const double high = (1.0 - p) * d;
    if (high > 709.0) {
        throw NumericalError("g_function: overflow at d = " + std::to_string(d));
    }
    // The linear parts of the two expm1 terms cancel exactly.
    return (1.0 - p) * expm1_minus_linear(-p * d) + p * expm1_minus_linear(high);
}

FiniteDistribution extremal_two_point(double d)
{
    const double p = extremal_probability(d);
    return FiniteDistribution({Atom{Complex{0.0, 0.0}, 1.0 - p}, Atom{Complex{d, 0.0}, p}});
}

BoundReport technical_check(double t)
{
    if (!(t >= 2.9)) {
        throw DomainError("technical_check: t must be at least 3 (2.9 accepted with a flag)");
    }
    BoundReport r;
    r.d = t;
    r.below_hypothesis = t < 3.0;
    r.g_value = g_function(t);
    r.envelope_value = envelope(t);

    const double scale = std::exp(t * t / 8.0);
    r.tech2_margin = 0.9 * scale - (r.g_value + 1.0);
    r.tech1_margin = 1.65 * scale - std::sqrt(g_function(2.0 * t) + 1.0);
    r.tech2_ok = r.tech2_margin > 0.0;
    r.tech1_ok = r.tech1_margin > 0.0;
    return r;
}

double integral_identity_check(double d)
{
    if (!(d >= 3.0)) {
        throw DomainError("integral_identity_check: d must be at least 3");
    }
    const double d2 = d * d;
    const double lower = 3.0 / d;
    double integral = 0.0;
    if (lower < 1.0) {
        auto integrand = [d2](double s) { return 0.25 * d2 * s * std::exp(d2 * s * s / 8.0); };
        double error = 0.0;
        integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, lower, 1.0, 20, 1e-15, &error);
        if (!std::isfinite(integral) || error > 1e-8 * std::abs(integral)) {
            throw NumericalError("integral_identity_check: quadrature did not converge (error estimate " +
                                 std::to_string(error) + ")");
        }
    }
    const double lhs = std::expm1(9.0 / 8.0) + integral;
    const double rhs = std::expm1(d2 / 8.0);
    return std::abs(lhs - rhs);
}

double centered_radius_bound(double alpha)
{
    if (!(alpha >= 0.0)) {
        throw DomainError("centered_radius_bound: radius must be non-negative");
    }
    return std::expm1(alpha * alpha / 2.0);
}

double ze_moment_bound(double d)
{
    if (!(d >= 0.0)) {
        throw DomainError("ze_moment_bound: diameter must be non-negative");
    }
    return 0.75 * d * std::exp(d * d / 8.0);
}

}  // namespace cxh
