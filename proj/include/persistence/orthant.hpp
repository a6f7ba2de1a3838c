#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "persistence/covariance.hpp"
#include "persistence/errors.hpp"
#include "persistence/matrix_core.hpp"
#include "persistence/normal.hpp"
#include "persistence/rng.hpp"
#include "persistence/sobol.hpp"

namespace persistence {

enum class EstimateMethod { closed_form, qmc_sequential, plain_mc };

inline const char* method_name(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::closed_form: return "closed_form";
        case EstimateMethod::qmc_sequential: return "qmc_sequential";
        case EstimateMethod::plain_mc: return "plain_mc";
    }
    return "?";
}

struct OrthantEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    EstimateMethod method = EstimateMethod::closed_form;
    std::uint64_t samples = 0;  // total function evaluations / draws
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;  // informational; never serialized
    bool unreliable = false;    // std_error exceeds estimate
};

// Classical arcsine orthant formulas, n <= 3; exact oracles for the samplers.
inline OrthantEstimate orthant_closed_form(const CovMatrix& M) {
    const long n = M.size();
    if (n > 3) throw input_error("orthant_closed_form: closed forms exist only for n <= 3");
    auto rho = [&](long i, long j) {
        double r = M.sigma(i, j) / std::sqrt(M.sigma(i, i) * M.sigma(j, j));
        if (!(std::fabs(r) <= 1.0)) throw input_error("orthant_closed_form: |rho| > 1");
        return r;
    };
    OrthantEstimate e;
    e.method = EstimateMethod::closed_form;
    if (n == 1) {
        e.estimate = 0.5;
    } else if (n == 2) {
        e.estimate = 0.25 + std::asin(rho(0, 1)) / (2.0 * M_PI);
    } else {
        e.estimate = 0.125 +
                     (std::asin(rho(0, 1)) + std::asin(rho(0, 2)) + std::asin(rho(1, 2))) /
                         (4.0 * M_PI);
    }
    return e;
}

namespace detail {

// Genz sequential-conditioning integrand: one scrambled point u in (0,1)^{n-1}
// maps to a product of conditional tail probabilities. Works entirely with
// upper-tail quantities, so tiny probabilities do not cancel.
inline double genz_product(const Eigen::MatrixXd& L, const double* u, std::vector<double>& z) {
    const long n = L.rows();
    double p = 1.0;
    for (long i = 0; i < n; ++i) {
        double s = 0.0;
        for (long j = 0; j < i; ++j) s += L(i, j) * z[static_cast<std::size_t>(j)];
        double t = -s / L(i, i);
        double q = normal_sf(t);
        p *= q;
        if (p <= 0.0) return 0.0;
        if (i < n - 1) {
            double w = (1.0 - u[i]) * q;
            z[static_cast<std::size_t>(i)] = inv_normal_sf(w);
        }
    }
    return p;
}

}  // namespace detail

// Randomized-QMC orthant probability: sequential conditioning in canonical
// (ascending index) order, evaluated on a scrambled digital net. The estimate
// is the mean over independently scrambled randomizations and is bit-identical
// for fixed (seed, points, randomizations).
inline OrthantEstimate estimate_qmc(const CovMatrix& M, std::uint64_t points,
                                    std::uint64_t randomizations, std::uint64_t seed) {
    if (points < (1u << 10)) throw input_error("estimate_qmc: need at least 2^10 points");
    if (randomizations < 8) throw input_error("estimate_qmc: need at least 8 randomizations");
    auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd L = cholesky(M);
    const long n = M.size();
    ScrambledSobol net(static_cast<int>(std::max<long>(1, n - 1)));
    std::vector<double> means;
    means.reserve(randomizations);
    std::vector<double> z(static_cast<std::size_t>(n), 0.0);
    for (std::uint64_t r = 0; r < randomizations; ++r) {
        double sum = 0.0;
        net.for_each_point(seed, r, points,
                           [&](const double* u) { sum += detail::genz_product(L, u, z); });
        means.push_back(sum / static_cast<double>(points));
    }
    OrthantEstimate e;
    e.method = EstimateMethod::qmc_sequential;
    e.samples = points * randomizations;
    e.seed = seed;
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(means.size() - 1);
    e.estimate = mean;
    e.std_error = std::sqrt(var / static_cast<double>(means.size()));
    e.unreliable = e.std_error > e.estimate;
    e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

// Plain Monte Carlo oracle: Cholesky times standard normals, count
// all-positive events, binomial standard error.
inline OrthantEstimate estimate_plain_mc(const CovMatrix& M, std::uint64_t samples,
                                         std::uint64_t seed) {
    if (samples < 2) throw input_error("estimate_plain_mc: need at least 2 samples");
    auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd L = cholesky(M);
    const long n = M.size();
    SplitMix64 rng(seed, 0x6d63ULL);
    std::uint64_t hits = 0;
    Eigen::VectorXd g(n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (long i = 0; i < n; ++i) g(i) = rng.next_normal();
        Eigen::VectorXd x = L * g;
        bool all_pos = true;
        for (long i = 0; i < n; ++i)
            if (!(x(i) > 0.0)) {
                all_pos = false;
                break;
            }
        if (all_pos) ++hits;
    }
    OrthantEstimate e;
    e.method = EstimateMethod::plain_mc;
    e.samples = samples;
    e.seed = seed;
    e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
    e.unreliable = e.std_error > e.estimate;
    e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

}  // namespace persistence
