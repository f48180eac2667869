// Gauss-Legendre rules on [-1,1] for panel integration.
#pragma once

#include <cstddef>
#include <span>

namespace hsbem {

struct GaussPoint {
    double x;
    double w;
};

// Supported orders: 4, 6, 8, 10, 12, 16, 24, 32. Requests in between are
// rounded up; requests above 32 are clamped.
std::span<const GaussPoint> gauss_rule(int order);

} // namespace hsbem
