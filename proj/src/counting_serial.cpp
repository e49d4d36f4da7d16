#include "sl2/counting.hpp"

#include <stdexcept>

namespace sl2::serial {

// reference sieve: single pass, no segmentation
std::vector<uint16_t> divisor_sieve(i64 x) {
    if (x < 1) throw std::invalid_argument("divisor_sieve: x must be >= 1");
    if (x > 100000000) throw std::length_error("resource-limit: x > 1e8");
    std::vector<uint16_t> d(x + 1, 0);
    for (i64 i = 1; i <= x; ++i)
        for (i64 j = i; j <= x; j += i) d[j]++;
    return d;
}

}  // namespace sl2::serial
