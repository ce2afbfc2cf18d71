#pragma once

#include <cstdio>
#include <string>

namespace hzreach
{

/// Shortest text that still round-trips a double (17 significant digits).
inline std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace hzreach
