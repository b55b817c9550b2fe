#pragma once

#include <cstdio>
#include <string>

namespace gestalt {

// All numeric text output uses 9 significant digits ("%.9g"); infinities
// print as "inf"/"-inf".
inline std::string format_g9(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

} // namespace gestalt
