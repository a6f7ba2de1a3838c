#pragma once

// Extended-precision path for severely ill-conditioned Toeplitz matrices.
// The band-indicator Sigma_N has smallest eigenvalue ~ exp(-1.7 N), far below
// double roundoff for N ~ 24, so the Section-6 series is computed with a
// 50-digit floating type and straightforward O(N^3) dense routines.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "persistence/errors.hpp"

namespace persistence {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

namespace highprec {

template <class Real>
using Matrix = std::vector<std::vector<Real>>;

template <class Real>
Matrix<Real> cholesky_lower(const Matrix<Real>& a) {
    const std::size_t n = a.size();
    Matrix<Real> L(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Real s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            if (i == j) {
                if (s <= 0) throw numerical_error("highprec cholesky: matrix not positive definite");
                L[i][i] = sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    return L;
}

template <class Real>
Real log_det_from_cholesky(const Matrix<Real>& L) {
    Real s(0);
    for (std::size_t i = 0; i < L.size(); ++i) s += log(L[i][i]);
    return 2 * s;
}

// Inverse from the Cholesky factor: invert L, then A^{-1} = L^{-t} L^{-1}.
template <class Real>
Matrix<Real> inverse_from_cholesky(const Matrix<Real>& L) {
    const std::size_t n = L.size();
    Matrix<Real> Li(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) {
        Li[i][i] = Real(1) / L[i][i];
        for (std::size_t j = 0; j < i; ++j) {
            Real s(0);
            for (std::size_t k = j; k < i; ++k) s += L[i][k] * Li[k][j];
            Li[i][j] = -s / L[i][i];
        }
    }
    Matrix<Real> inv(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Real s(0);
            for (std::size_t k = i; k < n; ++k) s += Li[k][i] * Li[k][j];
            inv[i][j] = s;
            inv[j][i] = s;
        }
    return inv;
}

// Smallest eigenvalue via power iteration on the inverse.
template <class Real>
Real smallest_eigenvalue(const Matrix<Real>& inv, int iterations = 200) {
    const std::size_t n = inv.size();
    std::vector<Real> v(n, Real(1));
    Real lam(0);
    for (int it = 0; it < iterations; ++it) {
        std::vector<Real> w(n, Real(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[i] += inv[i][j] * v[j];
        Real norm(0);
        for (Real& x : w) norm += x * x;
        norm = sqrt(norm);
        if (norm == 0) throw numerical_error("highprec smallest_eigenvalue: zero iterate");
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        lam = norm;  // Rayleigh quotient surrogate: ||inv v|| with unit v
    }
    return Real(1) / lam;
}

}  // namespace highprec

struct Section6Row {
    long N = 0;
    double neg_log_hhat = 0.0;   // -log H_hat(N)
    double min_inverse_entry = 0.0;
    bool inverse_all_positive = false;
    double sigma_min = 0.0;
    double log_det = 0.0;
};

// -log H_hat(N) series for a 1-d kernel given in extended precision.
inline std::vector<Section6Row> section6_series(const std::function<BigFloat(long)>& kernel,
                                                long n_max) {
    std::vector<Section6Row> rows;
    for (long N = 1; N <= n_max; ++N) {
        highprec::Matrix<BigFloat> S(static_cast<std::size_t>(N),
                                     std::vector<BigFloat>(static_cast<std::size_t>(N)));
        for (long i = 0; i < N; ++i)
            for (long j = 0; j < N; ++j) S[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = kernel(i - j);
        auto L = highprec::cholesky_lower(S);
        auto inv = highprec::inverse_from_cholesky(L);
        BigFloat logdet = highprec::log_det_from_cholesky(L);
        BigFloat min_entry = inv[0][0];
        BigFloat sum_log_diag(0);
        for (long k = 0; k < N; ++k) {
            sum_log_diag += log(inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)]);
            for (long j = 0; j < N; ++j)
                min_entry = (std::min)(min_entry, inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
        }
        BigFloat neg_log = N * log(BigFloat(2)) + logdet / 2 + sum_log_diag / 2;
        Section6Row row;
        row.N = N;
        row.neg_log_hhat = static_cast<double>(neg_log);
        row.min_inverse_entry = static_cast<double>(min_entry);
        row.inverse_all_positive = min_entry > 1e-10;
        row.sigma_min = static_cast<double>(highprec::smallest_eigenvalue(inv));
        row.log_det = static_cast<double>(logdet);
        rows.push_back(row);
    }
    return rows;
}

// The band-indicator kernel evaluated in extended precision.
inline BigFloat band_indicator_kernel_big(long m) {
    m = m < 0 ? -m : m;
    if (m == 0) return BigFloat(1) / 2;
    if (m % 2 == 0) return BigFloat(0);
    BigFloat v = BigFloat(1) / (boost::math::constants::pi<BigFloat>() * m);
    return (m % 4 == 3) ? v : -v;
}

}  // namespace persistence
