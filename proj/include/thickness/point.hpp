#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace thickness {

using Point = std::vector<double>;

inline Point sub(std::span<const double> a, std::span<const double> b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Point add(std::span<const double> a, std::span<const double> b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Point scaled(std::span<const double> a, double s) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline bool all_finite(std::span<const double> a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace thickness
