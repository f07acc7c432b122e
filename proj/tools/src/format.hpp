#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace cxh::cli {

/// Shortest text that reads back to the same double.
inline std::string num(double v)
{
    char buf[32];
    for (int p = 15; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string sci(double v, int digits = 3)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

}  // namespace cxh::cli
