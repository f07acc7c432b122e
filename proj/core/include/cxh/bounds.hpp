#pragma once

// Closed-form bound functions for the complex Hoeffding inequality.
//
//   envelope(d)   = e^{d^2/8} - 1, the bound on |E e^{Z - E Z} - 1| for
//                   every complex Z of diameter at most d.
//   g_function(d) = E e^{X_d - E X_d} - 1 for the extremal two-point
//                   variable X_d on {0, d}; tight for real variables and,
//                   below the critical diameter, for complex ones too.

#include "cxh/complex_dist.hpp"

namespace cxh {

/// e^{d^2/8} - 1. Throws DomainError for d < 0.
double envelope(double d);

/// Values below this use the fourth-order series for G.
inline constexpr double kGSeriesThreshold = 1e-3;

/// G(d). Throws DomainError for d < 0, NumericalError past d ~ 700.
double g_function(double d);

/// P(X_d = d) = (e^d - 1 - d) / (d (e^d - 1)). Throws DomainError for d <= 0.
double extremal_probability(double d);

/// X_d: mass 1 - P at 0, mass P at d.
FiniteDistribution extremal_two_point(double d);

struct BoundReport {
    double d = 0.0;
    double g_value = 0.0;
    double envelope_value = 0.0;
    // G(t) + 1 <= 0.9 e^{t^2/8}
    bool tech2_ok = false;
    double tech2_margin = 0.0;
    // sqrt(G(2t) + 1) <= 1.65 e^{t^2/8}
    bool tech1_ok = false;
    double tech1_margin = 0.0;
    // Set when 2.9 <= t < 3, outside the range the inequalities are claimed for.
    bool below_hypothesis = false;
};

/// Evaluates both technical inequalities at t. Margins are RHS - LHS.
/// Accepts t >= 2.9 (flagging t < 3); throws DomainError below that.
BoundReport technical_check(double t);

/// |e^{9/8} - 1 + int_{3/d}^1 (d^2 s / 4) e^{d^2 s^2 / 8} ds - (e^{d^2/8} - 1)|
/// with the integral done by adaptive Gauss-Kronrod quadrature.
/// Throws DomainError for d < 3 and NumericalError if quadrature fails.
double integral_identity_check(double d);

/// e^{alpha^2/2} - 1: the bound for |Z - E Z| <= alpha almost surely.
double centered_radius_bound(double alpha);

/// (3/4) d e^{d^2/8}: bound on |E Z e^Z| for zero-mean Z of diameter d >= 3.
double ze_moment_bound(double d);

}  // namespace cxh
