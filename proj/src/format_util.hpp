#pragma once

#include <cstdio>
#include <string>

namespace treekm::detail {

inline std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace treekm::detail
