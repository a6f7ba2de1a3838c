#pragma once

#include <cmath>
#include <limits>

#include "persistence/errors.hpp"

namespace persistence {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// Upper tail P{Z > x}; accurate far into the tail where 1 - Phi(x) cancels.
inline double normal_sf(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

namespace detail {

// Inverse of the upper tail on (0, 0.5]: returns x with normal_sf(x) = w.
// Hastings-type initial guess (|err| < 4.5e-4) followed by Newton on the
// complementary CDF, which avoids cancellation for tiny w.
inline double inv_normal_sf_small(double w) {
    double t = std::sqrt(-2.0 * std::log(w));
    double x = t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t);
    for (int it = 0; it < 3; ++it) {
        double err = normal_sf(x) - w;
        double d = normal_pdf(x);
        if (d <= 0.0) break;
        x += err / d;
    }
    return x;
}

}  // namespace detail

// Inverse upper-tail: x with P{Z > x} = w, for w in (0,1).
inline double inv_normal_sf(double w) {
    if (w <= 0.0 || w >= 1.0) {
        if (w == 0.0) return std::numeric_limits<double>::infinity();
        if (w == 1.0) return -std::numeric_limits<double>::infinity();
        throw input_error("inv_normal_sf: argument must lie in (0,1)");
    }
    if (w > 0.5) return -detail::inv_normal_sf_small(1.0 - w);
    return detail::inv_normal_sf_small(w);
}

// Phi^{-1}(u) for u in (0,1); absolute error well below 1e-9.
inline double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0)) throw input_error("inverse_normal_cdf: u must lie in (0,1)");
    return u < 0.5 ? -detail::inv_normal_sf_small(u) : inv_normal_sf(1.0 - u);
}

}  // namespace persistence
