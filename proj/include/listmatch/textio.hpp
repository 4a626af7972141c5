// Deterministic text formatting: every number the tool emits goes through
// these helpers so reruns are byte-identical.
#pragma once

#include <cstdio>
#include <string>

namespace listmatch {

inline std::string format_g(double value, int significant_digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return buf;
}

}  // namespace listmatch
