#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "persistence/bounds.hpp"
#include "persistence/covariance.hpp"
#include "persistence/highprec.hpp"
#include "persistence/orthant.hpp"
#include "persistence/quadratic_fit.hpp"
#include "persistence/spectral_density.hpp"

namespace persistence {

struct ExperimentRow {
    long n = 0;
    std::optional<double> estimate;
    std::optional<double> std_error;
    std::optional<double> exact;
    std::optional<double> lower_lemma31;
    std::optional<double> lower_thm1;
    std::optional<double> upper_section6;
    std::optional<double> sigma_min;
    std::optional<double> log_det;
    std::optional<double> neg_log_upper;  // -log H_hat, stable when H_hat underflows
    std::optional<double> z_score;
    bool inverse_all_positive = true;
    bool flagged = false;  // bounds fail to sandwich the estimate within 3 stderr
};

struct ExperimentResult {
    std::string name;
    std::vector<ExperimentRow> rows;
    std::optional<QuadraticFit> fit;
    bool passed = true;
    std::map<std::string, double> config;
};

inline void write_experiment_csv(const ExperimentResult& res, std::ostream& os) {
    os << "n,estimate,stderr,exact,lower_lemma31,lower_thm1,upper_section6,sigma_min,logdet\n";
    auto cell = [&os](const std::optional<double>& v) {
        os << ',';
        if (v) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", *v);
            os << buf;
        }
    };
    for (const auto& r : res.rows) {
        os << r.n;
        cell(r.estimate);
        cell(r.std_error);
        cell(r.exact);
        cell(r.lower_lemma31);
        cell(r.lower_thm1);
        cell(r.upper_section6);
        cell(r.sigma_min);
        cell(r.log_det);
        os << '\n';
    }
}

// Example 4.1 reproduction: H_X(n) = 1/(n+1)! for b(t) = 2 - 2 cos t.
// Fails (passed = false) if any |z| > 4 for n <= 7.
inline ExperimentResult run_example41(long n_max, std::uint64_t points, std::uint64_t randomizations,
                                      std::uint64_t seed) {
    SpectralDensity b = one_minus_cos();
    CovarianceKernel k = fourier_coefficients(b, n_max, 1 << 14);
    ExperimentResult res;
    res.name = "example41";
    res.config = {{"n_max", static_cast<double>(n_max)},
                  {"points", static_cast<double>(points)},
                  {"randomizations", static_cast<double>(randomizations)},
                  {"seed", static_cast<double>(seed)}};
    double factorial = 1.0;
    for (long n = 1; n <= n_max; ++n) {
        factorial *= static_cast<double>(n + 1);
        CovMatrix M = build_sigma(k, IndexSet::segment(n));
        OrthantEstimate est = estimate_qmc(M, points, randomizations, seed);
        EigenExtremes ex = eigen_extremes(M);
        InverseReport inv = invert_and_logdet(M);

        ExperimentRow row;
        row.n = n;
        row.estimate = est.estimate;
        row.std_error = est.std_error;
        row.exact = 1.0 / factorial;
        row.sigma_min = ex.sigma_min;
        row.log_det = inv.log_det;
        row.lower_lemma31 = lemma31_lower_bound(M, k.variance()).value();
        BoundReport up = section6_upper_bound(M);
        if (!up.conditional) {
            row.upper_section6 = up.value();
            row.neg_log_upper = -up.log_value;
        }
        if (est.std_error > 0.0) row.z_score = (est.estimate - *row.exact) / est.std_error;
        if (row.z_score && std::fabs(*row.z_score) > 4.0 && n <= 7) res.passed = false;
        double lo = *row.lower_lemma31;
        double hi = row.upper_section6.value_or(1.0);
        const double slack = 1e-12;  // roundoff headroom when a bound is tight
        row.flagged = !(lo <= est.estimate + 3.0 * est.std_error + slack &&
                        est.estimate - 3.0 * est.std_error <= hi + slack);
        res.rows.push_back(row);
    }
    return res;
}

// Section 6 reproduction for the band-indicator density: Sigma_N^{-1}
// positivity for N <= n_max, the -log H_hat(N) series, and its OLS parabola.
// Runs in 50-digit precision; Sigma_N here is too ill-conditioned for doubles.
inline ExperimentResult run_section6(long n_max) {
    ExperimentResult res;
    res.name = "section6";
    res.config = {{"n_max", static_cast<double>(n_max)}};
    auto rows = section6_series(band_indicator_kernel_big, n_max);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        ExperimentRow row;
        row.n = r.N;
        row.upper_section6 = std::exp(-r.neg_log_hhat);
        row.neg_log_upper = r.neg_log_hhat;
        row.sigma_min = r.sigma_min;
        row.log_det = r.log_det;
        row.inverse_all_positive = r.inverse_all_positive;
        if (!r.inverse_all_positive) {
            row.flagged = true;
            res.passed = false;
        }
        pts.emplace_back(static_cast<double>(r.N), r.neg_log_hhat);
        res.rows.push_back(row);
    }
    res.fit = quadratic_least_squares(pts);
    return res;
}

}  // namespace persistence
