#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "persistence/covariance.hpp"
#include "persistence/highprec.hpp"
#include "persistence/matrix_core.hpp"

using namespace persistence;

namespace {

CovMatrix wrap(Eigen::MatrixXd m) {
    CovMatrix M;
    M.A = IndexSet::segment(m.rows());
    M.sigma = std::move(m);
    M.mu0 = M.sigma(0, 0);
    return M;
}

}  // namespace

TEST_CASE("identity matrix: eigenvalues, inverse, log-determinant") {
    CovMatrix M = wrap(Eigen::MatrixXd::Identity(5, 5));
    EigenExtremes ex = eigen_extremes(M);
    REQUIRE(ex.sigma_min == Catch::Approx(1.0));
    REQUIRE(ex.sigma_max == Catch::Approx(1.0));
    InverseReport inv = invert_and_logdet(M);
    REQUIRE(inv.log_det == Catch::Approx(0.0).margin(1e-14));
    REQUIRE((inv.inverse - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("tridiagonal Toeplitz extremes match 2 -+ 2cos(pi/(N+1))") {
    for (long N : {2L, 5L, 17L, 40L}) {
        CovarianceKernel k = fourier_coefficients(one_minus_cos(), N, 1 << 10);
        CovMatrix M = build_sigma(k, IndexSet::segment(N));
        EigenExtremes ex = eigen_extremes(M);
        double theta = M_PI / static_cast<double>(N + 1);
        REQUIRE(ex.sigma_min == Catch::Approx(2.0 - 2.0 * std::cos(theta)).margin(1e-11));
        REQUIRE(ex.sigma_max == Catch::Approx(2.0 + 2.0 * std::cos(theta)).margin(1e-11));
    }
}

TEST_CASE("Cholesky of [[4,2],[2,5]] is [[2,0],[1,2]]") {
    Eigen::MatrixXd m(2, 2);
    m << 4, 2, 2, 5;
    Eigen::MatrixXd L = cholesky(wrap(m));
    REQUIRE(L(0, 0) == Catch::Approx(2.0));
    REQUIRE(L(1, 0) == Catch::Approx(1.0));
    REQUIRE(L(0, 1) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(L(1, 1) == Catch::Approx(2.0));
}

TEST_CASE("log-determinant of diag(1,3,1) is log 3") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
    m(1, 1) = 3.0;
    InverseReport inv = invert_and_logdet(wrap(m));
    REQUIRE(inv.log_det == Catch::Approx(std::log(3.0)).margin(1e-14));
    REQUIRE(inv.condition == Catch::Approx(3.0));
}

TEST_CASE("band-indicator Sigma_4 inverse is entrywise positive") {
    CovarianceKernel k = fourier_coefficients(band_indicator(), 4, 1 << 10);
    CovMatrix M = build_sigma(k, IndexSet::segment(4));
    InverseReport inv = invert_and_logdet(M);
    REQUIRE(inv.inverse.minCoeff() > 0.0);
}

TEST_CASE("numerically singular matrices are refused") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 1.0, 1.0, 1.0 + 1e-15;
    REQUIRE_THROWS_AS(invert_and_logdet(wrap(m)), numerical_error);
}

TEST_CASE("extended-precision Cholesky/inverse agree with doubles on a safe case") {
    CovarianceKernel k = fourier_coefficients(one_minus_cos(), 6, 1 << 10);
    CovMatrix M = build_sigma(k, IndexSet::segment(6));
    InverseReport inv = invert_and_logdet(M);

    highprec::Matrix<BigFloat> S(6, std::vector<BigFloat>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) S[i][j] = BigFloat(M.sigma(i, j));
    auto L = highprec::cholesky_lower(S);
    auto big_inv = highprec::inverse_from_cholesky(L);
    REQUIRE(static_cast<double>(highprec::log_det_from_cholesky(L)) ==
            Catch::Approx(inv.log_det).margin(1e-12));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            REQUIRE(static_cast<double>(big_inv[i][j]) == Catch::Approx(inv.inverse(i, j)).margin(1e-10));
    // det(Sigma_N) = N + 1 for this kernel
    REQUIRE(static_cast<double>(highprec::log_det_from_cholesky(L)) ==
            Catch::Approx(std::log(7.0)).margin(1e-12));
    EigenExtremes ex = eigen_extremes(M);
    REQUIRE(static_cast<double>(highprec::smallest_eigenvalue(big_inv)) ==
            Catch::Approx(ex.sigma_min).epsilon(1e-6));
}
