#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace snowflake {

struct GroupParams {
    int L = 6;
    double alpha = 0.0;  // log2 L
    double C = 0.0;      // distortion constant 2 + max{2(L+6), (L/2)^(3/2)}
};

inline GroupParams params_new(int L) {
    if (L < 6 || L % 2 != 0)
        throw std::invalid_argument("L must be even and at least 6, got " + std::to_string(L));
    GroupParams p;
    p.L = L;
    p.alpha = std::log2(static_cast<double>(L));
    p.C = 2.0 + std::max(2.0 * (L + 6), std::pow(L / 2.0, 1.5));
    return p;
}

}  // namespace snowflake
