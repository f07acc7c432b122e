#include "cxh/precise.hpp"

#include "cxh/error.hpp"

namespace cxh::precise {

Real extremal_probability(const Real& d)
{
    if (!(d > 0)) {
        throw DomainError("extremal_probability: diameter must be positive");
    }
    const Real em1 = boost::multiprecision::exp(d) - 1;
    return (em1 - d) / (d * em1);
}

Real g_function(const Real& d)
{
    if (d < 0) {
        throw DomainError("g_function: diameter must be non-negative");
    }
    if (d == 0) return Real(0);
    using boost::multiprecision::exp;
    const Real ed = exp(d);
    const Real em1 = ed - 1;
    const Real t1 = exp(-(ed - 1 - d) / em1);
    const Real t2 = exp((d * ed - ed + 1) / em1);
    const Real t3 = exp((2 * d * ed - ed - d + 1) / em1);
    return (t1 - 2 * t2 + t3) / (d * em1) - 1;
}

double g_function(double d)
{
    return static_cast<double>(g_function(Real(d)));
}

}  // namespace cxh::precise
