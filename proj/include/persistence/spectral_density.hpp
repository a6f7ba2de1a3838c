#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "persistence/errors.hpp"

namespace persistence {

// Lattice point / lag in Z^d, d <= 2. The second coordinate is 0 when d == 1.
using Lag = std::array<long, 2>;
// Point on the torus T^d = [-pi, pi]^d.
using TorusPoint = std::array<double, 2>;

enum class Family {
    white_noise,
    one_minus_cos,
    band_indicator,
    moving_average,
    grid_sampled,
    custom,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::white_noise: return "white_noise";
        case Family::one_minus_cos: return "one_minus_cos";
        case Family::band_indicator: return "band_indicator";
        case Family::moving_average: return "moving_average";
        case Family::grid_sampled: return "grid_sampled";
        case Family::custom: return "custom";
    }
    return "?";
}

// A symmetric nonnegative spectral density b on T^d. Lebesgue measure is
// normalized to lambda(T^d) = 1 throughout; every built-in kernel and every
// quadrature below uses that normalization. Only the absolutely continuous
// part of the spectral measure is representable; `singular_part_assumed_zero`
// is carried into all downstream reports.
struct SpectralDensity {
    int dimension = 1;
    Family family = Family::custom;
    std::function<double(const TorusPoint&)> evaluator;
    // Closed-form m -> mu_hat(m), when one exists; empty otherwise.
    std::function<double(const Lag&)> analytic_kernel;
    std::vector<double> coefficients;  // moving_average taps or grid samples
    bool singular_part_assumed_zero = true;

    bool has_analytic_kernel() const { return static_cast<bool>(analytic_kernel); }

    double operator()(double t) const { return evaluator({t, 0.0}); }
    double operator()(double t1, double t2) const { return evaluator({t1, t2}); }
};

inline SpectralDensity white_noise(int dimension = 1) {
    if (dimension < 1 || dimension > 2) throw input_error("white_noise: dimension must be 1 or 2");
    SpectralDensity b;
    b.dimension = dimension;
    b.family = Family::white_noise;
    b.evaluator = [](const TorusPoint&) { return 1.0; };
    b.analytic_kernel = [](const Lag& m) { return (m[0] == 0 && m[1] == 0) ? 1.0 : 0.0; };
    return b;
}

// b(t) = 2 - 2 cos t, the spectral density of X_n = xi_n - xi_{n+1}.
inline SpectralDensity one_minus_cos() {
    SpectralDensity b;
    b.dimension = 1;
    b.family = Family::one_minus_cos;
    b.evaluator = [](const TorusPoint& t) { return 2.0 - 2.0 * std::cos(t[0]); };
    b.analytic_kernel = [](const Lag& m) {
        long k = std::labs(m[0]);
        if (k == 0) return 2.0;
        if (k == 1) return -1.0;
        return 0.0;
    };
    return b;
}

// Indicator of the high-frequency band {pi/2 <= |t| <= pi}. The evaluator
// takes the value 1/2 exactly at the jumps, which makes the uniform-grid
// trapezoid rule second-order there instead of first-order.
inline SpectralDensity band_indicator() {
    SpectralDensity b;
    b.dimension = 1;
    b.family = Family::band_indicator;
    b.evaluator = [](const TorusPoint& t) {
        double a = std::fabs(t[0]);
        if (a == M_PI_2) return 0.5;
        return a > M_PI_2 ? 1.0 : 0.0;
    };
    b.analytic_kernel = [](const Lag& m) {
        long k = std::labs(m[0]);
        if (k == 0) return 0.5;
        if (k % 2 == 0) return 0.0;
        double v = 1.0 / (M_PI * static_cast<double>(k));
        return (k % 4 == 3) ? v : -v;
    };
    return b;
}

// b(t) = |sum_k a_k e^{ikt}|^2, the density of X_n = sum_k a_k xi_{n+k}.
inline SpectralDensity moving_average(std::vector<double> a) {
    bool all_zero = true;
    for (double c : a)
        if (c != 0.0) all_zero = false;
    if (a.empty() || all_zero) throw input_error("moving_average: coefficients must not be all zero");
    SpectralDensity b;
    b.dimension = 1;
    b.family = Family::moving_average;
    b.coefficients = a;
    b.evaluator = [a](const TorusPoint& t) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            re += a[k] * std::cos(static_cast<double>(k) * t[0]);
            im += a[k] * std::sin(static_cast<double>(k) * t[0]);
        }
        return re * re + im * im;
    };
    b.analytic_kernel = [a](const Lag& m) {
        std::size_t k = static_cast<std::size_t>(std::labs(m[0]));
        if (k >= a.size()) return 0.0;
        double s = 0.0;
        for (std::size_t j = 0; j + k < a.size(); ++j) s += a[j] * a[j + k];
        return s;
    };
    return b;
}

// Density given by samples on the uniform grid t_j = -pi + 2*pi*j/n over
// [-pi, pi); evaluated by periodic linear interpolation.
inline SpectralDensity grid_sampled(std::vector<double> values) {
    if (values.size() < 4) throw input_error("grid_sampled: need at least 4 grid values");
    SpectralDensity b;
    b.dimension = 1;
    b.family = Family::grid_sampled;
    b.coefficients = values;
    const std::size_t n = values.size();
    b.evaluator = [values, n](const TorusPoint& t) {
        double x = (t[0] + M_PI) / (2.0 * M_PI) * static_cast<double>(n);
        double fl = std::floor(x);
        double frac = x - fl;
        long j = static_cast<long>(fl);
        auto wrap = [n](long k) { return static_cast<std::size_t>(((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n)); };
        return (1.0 - frac) * values[wrap(j)] + frac * values[wrap(j + 1)];
    };
    return b;
}

inline SpectralDensity custom_density(int dimension,
                                      std::function<double(const TorusPoint&)> evaluator,
                                      std::function<double(const Lag&)> kernel = nullptr) {
    if (dimension < 1 || dimension > 2) throw input_error("custom_density: dimension must be 1 or 2");
    SpectralDensity b;
    b.dimension = dimension;
    b.family = Family::custom;
    b.evaluator = std::move(evaluator);
    b.analytic_kernel = std::move(kernel);
    return b;
}

}  // namespace persistence
