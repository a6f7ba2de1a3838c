#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "persistence/covariance.hpp"
#include "persistence/normal.hpp"
#include "persistence/orthant.hpp"
#include "persistence/rng.hpp"

using namespace persistence;

namespace {

CovMatrix wrap(Eigen::MatrixXd m) {
    CovMatrix M;
    M.A = IndexSet::segment(m.rows());
    M.sigma = std::move(m);
    M.mu0 = M.sigma(0, 0);
    return M;
}

// Random positive-definite correlation matrix via a Gram matrix with ridge.
CovMatrix random_correlation(long n, SplitMix64& rng) {
    Eigen::MatrixXd g(n, n + 2);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n + 2; ++j) g(i, j) = rng.next_normal();
    Eigen::MatrixXd s = g * g.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd d = s.diagonal().cwiseSqrt();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) s(i, j) /= d(i) * d(j);
    return wrap(s);
}

}  // namespace

TEST_CASE("inverse normal CDF round-trips to 1e-9") {
    for (double u : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-9}) {
        double x = inverse_normal_cdf(u);
        REQUIRE(normal_cdf(x) == Catch::Approx(u).margin(1e-9));
    }
    for (double w : {1e-300, 1e-30, 1e-10, 0.2, 0.5, 0.9}) {
        double x = inv_normal_sf(w);
        REQUIRE(normal_sf(x) == Catch::Approx(w).epsilon(1e-9));
    }
    REQUIRE(inverse_normal_cdf(0.5) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE_THROWS_AS(inverse_normal_cdf(0.0), input_error);
}

TEST_CASE("closed forms: tridiagonal examples give 1/6 and 1/24") {
    CovarianceKernel k = fourier_coefficients(one_minus_cos(), 4, 1 << 10);
    CovMatrix M2 = build_sigma(k, IndexSet::segment(2));
    CovMatrix M3 = build_sigma(k, IndexSet::segment(3));
    REQUIRE(orthant_closed_form(M2).estimate == Catch::Approx(1.0 / 6.0).margin(1e-14));
    REQUIRE(orthant_closed_form(M3).estimate == Catch::Approx(1.0 / 24.0).margin(1e-14));
    REQUIRE_THROWS_AS(orthant_closed_form(wrap(Eigen::MatrixXd::Identity(4, 4))), input_error);
}

TEST_CASE("QMC on the identity is exactly 2^-n with zero variance") {
    OrthantEstimate e = estimate_qmc(wrap(Eigen::MatrixXd::Identity(10, 10)), 1 << 10, 8, 42);
    REQUIRE(e.estimate == Catch::Approx(std::pow(2.0, -10.0)).margin(1e-15));
    REQUIRE(e.std_error <= 1e-15);
}

TEST_CASE("QMC reproduces the factorial law for small n") {
    CovarianceKernel k = fourier_coefficients(one_minus_cos(), 6, 1 << 10);
    double factorial = 1.0;
    for (long n = 1; n <= 5; ++n) {
        factorial *= static_cast<double>(n + 1);
        CovMatrix M = build_sigma(k, IndexSet::segment(n));
        OrthantEstimate e = estimate_qmc(M, 1 << 13, 12, 7);
        double z = (e.estimate - 1.0 / factorial) / std::max(e.std_error, 1e-15);
        REQUIRE(std::fabs(z) <= 5.0);
    }
}

TEST_CASE("QMC matches the arcsine closed forms on random correlations") {
    SplitMix64 rng(1234u, 0u);
    for (int trial = 0; trial < 10; ++trial) {
        long n = 2 + (trial % 2);
        CovMatrix M = random_correlation(n, rng);
        double exact = orthant_closed_form(M).estimate;
        OrthantEstimate e = estimate_qmc(M, 1 << 12, 12, 99 + trial);
        REQUIRE(std::fabs(e.estimate - exact) <= std::max(4.0 * e.std_error, 1e-7));
    }
}

TEST_CASE("equicorrelation 1/2 gives 1/(n+1)") {
    for (long n : {4L, 7L}) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Constant(n, n, 0.5);
        s.diagonal().setOnes();
        OrthantEstimate e = estimate_qmc(wrap(s), 1 << 13, 12, 5);
        double exact = 1.0 / static_cast<double>(n + 1);
        REQUIRE(std::fabs(e.estimate - exact) <= std::max(4.0 * e.std_error, 1e-7));
    }
}

TEST_CASE("plain MC agrees with QMC within combined error") {
    SplitMix64 rng(777u, 0u);
    CovMatrix M = random_correlation(5, rng);
    OrthantEstimate q = estimate_qmc(M, 1 << 13, 12, 11);
    OrthantEstimate m = estimate_plain_mc(M, 200000, 12);
    double combined = std::sqrt(q.std_error * q.std_error + m.std_error * m.std_error);
    REQUIRE(std::fabs(q.estimate - m.estimate) <= 4.0 * combined);
}

TEST_CASE("estimates are deterministic in (seed, points, randomizations)") {
    SplitMix64 rng(3u, 0u);
    CovMatrix M = random_correlation(4, rng);
    OrthantEstimate a = estimate_qmc(M, 1 << 10, 8, 21);
    OrthantEstimate b = estimate_qmc(M, 1 << 10, 8, 21);
    REQUIRE(a.estimate == b.estimate);
    REQUIRE(a.std_error == b.std_error);
    OrthantEstimate c = estimate_qmc(M, 1 << 10, 8, 22);
    REQUIRE(a.estimate != c.estimate);  // different seed, different scrambles
}

TEST_CASE("orthant probability is invariant under coordinate permutation") {
    SplitMix64 rng(55u, 0u);
    CovMatrix M = random_correlation(5, rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> P(5);
    P.setIdentity();
    P.indices() << 3, 0, 4, 1, 2;
    CovMatrix Mp = wrap(P.transpose() * M.sigma * P);
    OrthantEstimate a = estimate_qmc(M, 1 << 12, 12, 31);
    OrthantEstimate b = estimate_qmc(Mp, 1 << 12, 12, 32);
    double combined = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    REQUIRE(std::fabs(a.estimate - b.estimate) <= std::max(4.0 * combined, 1e-7));
}

TEST_CASE("raising correlations raises the orthant probability (Slepian)") {
    auto equicorr = [](long n, double rho) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Constant(n, n, rho);
        s.diagonal().setOnes();
        return wrap(s);
    };
    OrthantEstimate lo = estimate_qmc(equicorr(6, 0.2), 1 << 12, 12, 8);
    OrthantEstimate hi = estimate_qmc(equicorr(6, 0.5), 1 << 12, 12, 8);
    REQUIRE(lo.estimate + 4.0 * (lo.std_error + hi.std_error) < hi.estimate);
}

TEST_CASE("sampler input validation") {
    CovMatrix I2 = wrap(Eigen::MatrixXd::Identity(2, 2));
    REQUIRE_THROWS_AS(estimate_qmc(I2, 16, 16, 1), input_error);
    REQUIRE_THROWS_AS(estimate_qmc(I2, 1 << 10, 2, 1), input_error);
    REQUIRE_THROWS_AS(estimate_plain_mc(I2, 1, 1), input_error);
}
