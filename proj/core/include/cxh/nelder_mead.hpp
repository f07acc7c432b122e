#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cxh {

struct NelderMeadOptions {
    std::size_t max_evaluations = 20000;
    /// Stop when the simplex's value spread falls below
    /// f_tolerance * (|f_best| + f_tolerance) and its extent below x_tolerance.
    double f_tolerance = 1e-15;
    double x_tolerance = 1e-10;
    /// Initial simplex edge along each coordinate.
    double initial_step = 0.1;
    /// Restart from the best vertex after convergence, until a restart
    /// stops improving. Guards against premature collapse.
    int max_restarts = 3;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Unconstrained minimization with the adaptive Nelder-Mead simplex
/// (dimension-dependent coefficients of Gao and Han).
NelderMeadResult nelder_mead(const Objective& f, std::span<const double> start,
                             const NelderMeadOptions& options = {});

}  // namespace cxh
