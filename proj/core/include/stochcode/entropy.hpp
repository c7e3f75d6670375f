#pragma once

#include <cmath>
#include <cstddef>

namespace stochcode {

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline double log2_binomial(std::size_t n, std::size_t k) {
    if (k > n) return -INFINITY;
    return (std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
            std::lgamma(static_cast<double>(n - k) + 1.0)) /
           std::log(2.0);
}

// log2 of the Hamming ball volume sum_{i<=r} C(n, i).
inline double log2_ball_volume(std::size_t n, std::size_t r) {
    double acc = 0.0;
    const double top = log2_binomial(n, r < n ? r : n);
    for (std::size_t i = 0; i <= r && i <= n; ++i) acc += std::exp2(log2_binomial(n, i) - top);
    return top + std::log2(acc);
}

} // namespace stochcode
