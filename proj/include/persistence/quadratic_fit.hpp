#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "persistence/errors.hpp"

namespace persistence {

struct QuadraticFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;  // c0 + c1 x + c2 x^2
    double rms = 0.0;

    double operator()(double x) const { return c0 + c1 * x + c2 * x * x; }
};

// Ordinary least squares on the monomial basis; normal equations solved by
// an LDLT factorization.
inline QuadraticFit quadratic_least_squares(const std::vector<std::pair<double, double>>& points) {
    std::set<double> xs;
    for (auto& [x, y] : points) xs.insert(x);
    if (xs.size() < 3) throw input_error("quadratic_least_squares: need >= 3 distinct x");
    Eigen::MatrixXd A(static_cast<long>(points.size()), 3);
    Eigen::VectorXd y(static_cast<long>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        double x = points[i].first;
        A(static_cast<long>(i), 0) = 1.0;
        A(static_cast<long>(i), 1) = x;
        A(static_cast<long>(i), 2) = x * x;
        y(static_cast<long>(i)) = points[i].second;
    }
    Eigen::VectorXd c = (A.transpose() * A).ldlt().solve(A.transpose() * y);
    QuadraticFit f;
    f.c0 = c(0);
    f.c1 = c(1);
    f.c2 = c(2);
    if (!std::isfinite(f.c2)) throw numerical_error("quadratic_least_squares: non-finite coefficient");
    f.rms = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(points.size()));
    return f;
}

}  // namespace persistence
