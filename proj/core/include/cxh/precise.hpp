#pragma once

// Extended-precision evaluation of the bound functions. Used for
// cross-checks of the double-precision path (`--precision extended`).

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace cxh::precise {

using Real = boost::multiprecision::cpp_bin_float_50;

/// G(d) from its three-exponential closed form, evaluated with 50 digits.
Real g_function(const Real& d);

/// P(X_d = d) with 50 digits.
Real extremal_probability(const Real& d);

double g_function(double d);

}  // namespace cxh::precise
