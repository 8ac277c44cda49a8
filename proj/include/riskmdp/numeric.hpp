#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace riskmdp {

/// Plain left-to-right inner product. Every expectation in this library goes
/// through this one helper so that identical inputs produce bitwise identical
/// results regardless of the call site.
inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        acc += a[j] * b[j];
    return acc;
}

inline double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

inline double inf_distance(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace riskmdp
