#pragma once

// Smooth compactly supported window profiles shared by the kernel builder
// and the counting windows.

#include <cmath>

namespace sl2 {

// smooth transition: 0 for u <= 0, 1 for u >= 1
inline double smoothstep(double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

// bump equal to 1 on [-lo, lo], supported on [-hi, hi]
inline double bump_window(double x, double lo, double hi) {
    x = std::abs(x);
    if (x <= lo) return 1.0;
    if (x >= hi) return 0.0;
    return smoothstep((hi - x) / (hi - lo));
}

inline double wrap_pi(double x) {  // into [-pi, pi)
    constexpr double two_pi = 6.283185307179586476925286766559;
    x = std::fmod(x + M_PI, two_pi);
    if (x < 0) x += two_pi;
    return x - M_PI;
}

}  // namespace sl2
