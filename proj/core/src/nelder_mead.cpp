#include "cxh/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cxh {

namespace {

struct Vertex {
    std::vector<double> x;
    double f = 0.0;
};

class Simplex {
public:
    Simplex(const Objective& f, std::size_t budget) : f_(f), budget_(budget) {}

    std::size_t evaluations() const { return evals_; }
    bool exhausted() const { return evals_ >= budget_; }

    double eval(const std::vector<double>& x)
    {
        ++evals_;
        const double v = f_(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    }

    // One descent from start. Returns true on convergence, false when the
    // budget runs out first.
    bool run(Vertex& best, double step, const NelderMeadOptions& opt)
    {
        const std::size_t n = best.x.size();
        const double dn = static_cast<double>(n);
        const double expand = 1.0 + 2.0 / dn;
        const double contract = 0.75 - 0.5 / dn;
        const double shrink = n > 1 ? 1.0 - 1.0 / dn : 0.5;

        std::vector<Vertex> s(n + 1, best);
        for (std::size_t i = 0; i < n; ++i) {
            s[i + 1].x[i] += step;
            s[i + 1].f = eval(s[i + 1].x);
        }

        std::vector<double> centroid(n), trial(n);
        auto point = [&](double t, const std::vector<double>& worst) {
            for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + t * (worst[k] - centroid[k]);
            return trial;
        };

        while (true) {
            std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

            double extent = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t k = 0; k < n; ++k) {
                    extent = std::max(extent, std::abs(s[i].x[k] - s[0].x[k]));
                }
            }
            const double spread = s[n].f - s[0].f;
            const bool flat = spread <= opt.f_tolerance * (1.0 + std::abs(s[0].f));
            if (extent <= opt.x_tolerance || (flat && extent <= 1e3 * opt.x_tolerance)) {
                best = s[0];
                return true;
            }
            if (exhausted()) {
                best = s[0];
                return false;
            }

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) centroid[k] += s[i].x[k];
            }
            for (double& c : centroid) c /= dn;

            Vertex& worst = s[n];
            const std::vector<double> xr = point(-1.0, worst.x);
            const double fr = eval(xr);

            if (fr < s[0].f) {
                const std::vector<double> xe = point(-expand, worst.x);
                const double fe = eval(xe);
                if (fe < fr) {
                    worst = {xe, fe};
                } else {
                    worst = {xr, fr};
                }
            } else if (fr < s[n - 1].f) {
                worst = {xr, fr};
            } else {
                const bool outside = fr < worst.f;
                const std::vector<double> xc = point(outside ? -contract : contract, worst.x);
                const double fc = eval(xc);
                if (fc < std::min(fr, worst.f)) {
                    worst = {xc, fc};
                } else {
                    for (std::size_t i = 1; i <= n; ++i) {
                        for (std::size_t k = 0; k < n; ++k) {
                            s[i].x[k] = s[0].x[k] + shrink * (s[i].x[k] - s[0].x[k]);
                        }
                        s[i].f = eval(s[i].x);
                    }
                }
            }
        }
    }

private:
    const Objective& f_;
    std::size_t budget_;
    std::size_t evals_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::span<const double> start,
                             const NelderMeadOptions& options)
{
    Simplex simplex(f, options.max_evaluations);
    Vertex best{std::vector<double>(start.begin(), start.end()), 0.0};
    best.f = simplex.eval(best.x);

    NelderMeadResult result;
    if (best.x.empty()) {
        result.x = best.x;
        result.value = best.f;
        result.evaluations = simplex.evaluations();
        result.converged = true;
        return result;
    }

    double step = options.initial_step;
    bool converged = simplex.run(best, step, options);
    for (int r = 0; converged && r < options.max_restarts; ++r) {
        const double before = best.f;
        step = std::max(options.initial_step * 1e-2, 1e2 * options.x_tolerance);
        converged = simplex.run(best, step, options);
        if (before - best.f <= options.f_tolerance * (1.0 + std::abs(best.f))) break;
    }

    result.x = std::move(best.x);
    result.value = best.f;
    result.evaluations = simplex.evaluations();
    result.converged = converged;
    return result;
}

}  // namespace cxh
