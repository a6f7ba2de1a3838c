#pragma once

#include <cmath>
#include <cstdlib>

#include "persistence/errors.hpp"
#include "persistence/spectral_density.hpp"

namespace persistence {

enum class HConstruction { convolution, geometric };

// The auxiliary function h used for the Slepian surrogate: hat(h)(0) = 0,
// hat(h)(m) >= 0, sup h = h(0) = 1 after normalization, and h <= -beta
// outside a neighbourhood of the origin. eps_prime is a fraction of the
// torus: the convolution form h = (f*f)/(f*f)(0) with f = (1+eta) 1_cube -
// eta has the exact plateau h = -eta for ||t||_inf > 2*pi*eps_prime, which
// is below the guaranteed depth -beta = -eps_prime^d since
// eta = eps_prime^d/(1-eps_prime^d) > eps_prime^d. beta is the depth the
// bounds rely on; the actual plateau is slightly deeper.
struct HFunction {
    int dimension = 1;
    double eps_prime = 0.0;
    double eta = 0.0;
    double beta = 0.0;  // guaranteed plateau depth: h <= -beta off the origin region
    HConstruction construction = HConstruction::convolution;
    double lambda = 0.0;  // geometric form only

    double operator()(const TorusPoint& t) const {
        if (construction == HConstruction::geometric) {
            double denom = 1.0 - 2.0 * lambda * std::cos(t[0]) + lambda * lambda;
            double raw = (lambda * std::cos(t[0]) - lambda * lambda) / denom;
            return raw * (1.0 - lambda) / lambda;  // divide by h(0) = lambda/(1-lambda)
        }
        double prod = 1.0;
        for (int j = 0; j < dimension; ++j) {
            double p = eps_prime - std::fabs(t[static_cast<std::size_t>(j)]) / (2.0 * M_PI);
            prod *= p > 0.0 ? p : 0.0;
        }
        double one_eta = 1.0 + eta;
        double raw = one_eta * one_eta * prod - eta * eta;
        // (f*f)(0) = (1+eta)^2 eps'^d - eta^2 = (1+eta) eps'^d = eta
        return raw / (one_eta * std::pow(eps_prime, dimension));
    }

    double operator()(double t) const { return (*this)({t, 0.0}); }

    // hat(h)(m); exact closed form. For the convolution construction
    // hat(h)(m) = hat(f)(m)^2 / h_raw(0), hence nonnegative, and hat(h)(0)
    // vanishes by the choice of eta.
    double fourier(const Lag& m) const {
        if (construction == HConstruction::geometric) {
            if (m[0] == 0) return 0.0;
            double h0 = lambda / (1.0 - lambda);
            return 0.5 * std::pow(lambda, static_cast<double>(std::labs(m[0]))) / h0;
        }
        auto coeff_1d = [this](long k) {
            if (k == 0) return eps_prime;
            double kk = static_cast<double>(k);
            return std::sin(kk * M_PI * eps_prime) / (M_PI * kk);
        };
        double g_hat = coeff_1d(m[0]);
        if (dimension == 2) g_hat *= coeff_1d(m[1]);
        double f_hat = (1.0 + eta) * g_hat;
        if (m[0] == 0 && m[1] == 0) f_hat -= eta;
        return f_hat * f_hat / ((1.0 + eta) * std::pow(eps_prime, dimension));
    }
};

// eps_prime in (0, 1/4); the geometric form additionally needs d = 1 and
// lambda in (cos(pi*eps_prime), 1). lambda <= 0 picks the midpoint default.
inline HFunction build_h(int dimension, double eps_prime,
                         HConstruction construction = HConstruction::convolution,
                         double lambda = 0.0) {
    if (dimension < 1 || dimension > 2) throw input_error("build_h: dimension must be 1 or 2");
    if (!(eps_prime > 0.0 && eps_prime < 0.25))
        throw input_error("build_h: eps_prime must lie in (0, 1/4)");
    HFunction h;
    h.dimension = dimension;
    h.eps_prime = eps_prime;
    h.construction = construction;
    double epsd = std::pow(eps_prime, dimension);
    h.eta = epsd / (1.0 - epsd);
    if (construction == HConstruction::geometric) {
        if (dimension != 1) throw input_error("build_h: geometric form requires d = 1");
        double lo = std::cos(M_PI * eps_prime);
        if (lambda <= 0.0) lambda = 0.5 * (lo + 1.0);
        if (!(lambda > lo && lambda < 1.0))
            throw input_error("build_h: geometric lambda must lie in (cos(pi*eps_prime), 1)");
        h.lambda = lambda;
        // sup of normalized h over |t| > pi*eps_prime is at most -beta with
        h.beta = (lambda - lo) * (1.0 - lambda) / ((1.0 + lambda) * (1.0 + lambda));
    } else {
        h.beta = epsd;  // guaranteed depth; the actual plateau is -eta <= -beta
    }
    return h;
}

}  // namespace persistence
