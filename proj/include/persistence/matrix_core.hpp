#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "persistence/covariance.hpp"
#include "persistence/errors.hpp"

namespace persistence {

struct EigenExtremes {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double residual_min = 0.0;  // ||Sigma v - sigma v|| for the extreme pairs
    double residual_max = 0.0;
};

struct InverseReport {
    Eigen::MatrixXd inverse;
    double log_det = 0.0;
    double condition = 0.0;        // sigma_max / sigma_min
    double verification_max = 0.0; // max-norm of Sigma*Sigma^{-1} - I
};

inline EigenExtremes eigen_extremes(const CovMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.sigma);
    if (es.info() != Eigen::Success)
        throw numerical_error("eigen_extremes: eigensolver did not converge");
    const long n = M.size();
    EigenExtremes r;
    r.sigma_min = es.eigenvalues()(0);
    r.sigma_max = es.eigenvalues()(n - 1);
    Eigen::VectorXd vmin = es.eigenvectors().col(0);
    Eigen::VectorXd vmax = es.eigenvectors().col(n - 1);
    r.residual_min = (M.sigma * vmin - r.sigma_min * vmin).norm();
    r.residual_max = (M.sigma * vmax - r.sigma_max * vmax).norm();
    double tol = 1e-9 * std::max(std::fabs(r.sigma_max), 1e-300) * std::sqrt(static_cast<double>(n));
    if (r.residual_min > tol || r.residual_max > tol) {
        std::ostringstream os;
        os << "eigen_extremes: residuals " << r.residual_min << ", " << r.residual_max
           << " exceed tolerance " << tol;
        throw numerical_error(os.str());
    }
    return r;
}

inline InverseReport invert_and_logdet(const CovMatrix& M) {
    EigenExtremes ex = eigen_extremes(M);
    if (!(ex.sigma_min > 1e-13 * ex.sigma_max)) {
        std::ostringstream os;
        os << "invert_and_logdet: matrix numerically singular (sigma_min=" << ex.sigma_min
           << ", sigma_max=" << ex.sigma_max << ")";
        throw numerical_error(os.str());
    }
    Eigen::LLT<Eigen::MatrixXd> llt(M.sigma);
    if (llt.info() != Eigen::Success)
        throw numerical_error("invert_and_logdet: Cholesky factorization failed");
    const long n = M.size();
    InverseReport r;
    r.inverse = llt.solve(Eigen::MatrixXd::Identity(n, n));
    r.log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    r.condition = ex.sigma_max / ex.sigma_min;
    r.verification_max = (M.sigma * r.inverse - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (r.verification_max > 1e-8 * r.condition)
        throw numerical_error("invert_and_logdet: verification product outside tolerance");
    return r;
}

// Lower-triangular L with L L^t = M.
inline Eigen::MatrixXd cholesky(const CovMatrix& M) {
    Eigen::LLT<Eigen::MatrixXd> llt(M.sigma);
    if (llt.info() != Eigen::Success)
        throw numerical_error("cholesky: matrix is not numerically positive definite");
    return llt.matrixL();
}

}  // namespace persistence
