#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "persistence/errors.hpp"
#include "persistence/spectral_density.hpp"

namespace persistence {

// ---------------------------------------------------------------------------
// Covariance kernel m -> mu_hat(m)
// ---------------------------------------------------------------------------

enum class KernelSource { analytic, quadrature };

// Fourier coefficients of the spectral density, tabulated for |m_i| <= max_lag
// and symmetrized exactly: mu_hat(m) == mu_hat(-m) by construction.
struct CovarianceKernel {
    int dimension = 1;
    long max_lag = 0;
    KernelSource source = KernelSource::analytic;
    int grid_size = 0;  // quadrature grid (per axis); 0 for analytic
    std::vector<double> table;
    std::function<double(const Lag&)> analytic;

    double variance() const { return at({0, 0}); }

    double at(const Lag& m) const {
        long m0 = std::labs(m[0]);
        long m1 = std::labs(m[1]);
        if (m0 <= max_lag && m1 <= max_lag) {
            // canonical representative: first nonzero coordinate positive
            long a = m[0], b = m[1];
            if (a < 0 || (a == 0 && b < 0)) {
                a = -a;
                b = -b;
            }
            std::size_t i = static_cast<std::size_t>(a + max_lag);
            std::size_t j = static_cast<std::size_t>(b + max_lag);
            std::size_t span = static_cast<std::size_t>(2 * max_lag + 1);
            return dimension == 1 ? table[i] : table[i * span + j];
        }
        if (analytic) return analytic(m);
        std::ostringstream os;
        os << "covariance kernel: lag (" << m[0] << "," << m[1] << ") outside computed range "
           << max_lag << " and no analytic kernel";
        throw accuracy_error(os.str());
    }
};

namespace detail {

inline std::vector<double> torus_nodes(int grid) {
    std::vector<double> t(static_cast<std::size_t>(grid));
    for (int j = 0; j < grid; ++j) t[static_cast<std::size_t>(j)] = -M_PI + 2.0 * M_PI * j / grid;
    return t;
}

// Density values on the uniform grid, with the nonnegativity and symmetry
// invariants checked at the nodes.
inline std::vector<double> sampled_values_1d(const SpectralDensity& b, int grid) {
    auto t = torus_nodes(grid);
    std::vector<double> v(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
        v[j] = b(t[j]);
        if (!(v[j] >= -1e-12)) throw input_error("spectral density is negative at a quadrature node");
    }
    for (std::size_t j = 1; j < t.size(); ++j) {
        // -t_j coincides with t_{G-j} modulo 2*pi
        if (std::fabs(v[j] - v[t.size() - j]) > 1e-12)
            throw input_error("spectral density is not symmetric about the origin");
    }
    return v;
}

inline std::vector<std::complex<double>> quadrature_coeffs_1d(const std::vector<double>& v,
                                                              long max_lag) {
    const int grid = static_cast<int>(v.size());
    auto t = torus_nodes(grid);
    std::vector<std::complex<double>> c(static_cast<std::size_t>(max_lag + 1));
    for (long m = 0; m <= max_lag; ++m) {
        double re = 0.0, im = 0.0;
        for (int j = 0; j < grid; ++j) {
            re += v[static_cast<std::size_t>(j)] * std::cos(m * t[static_cast<std::size_t>(j)]);
            im += v[static_cast<std::size_t>(j)] * std::sin(m * t[static_cast<std::size_t>(j)]);
        }
        c[static_cast<std::size_t>(m)] = {re / grid, im / grid};
    }
    return c;
}

inline std::vector<double> sampled_values_2d(const SpectralDensity& b, int grid) {
    auto t = torus_nodes(grid);
    std::vector<double> v(t.size() * t.size());
    for (std::size_t j = 0; j < t.size(); ++j)
        for (std::size_t k = 0; k < t.size(); ++k) {
            double val = b(t[j], t[k]);
            if (!(val >= -1e-12)) throw input_error("spectral density is negative at a quadrature node");
            v[j * t.size() + k] = val;
        }
    std::size_t G = t.size();
    for (std::size_t j = 0; j < G; ++j)
        for (std::size_t k = 0; k < G; ++k) {
            std::size_t jr = j == 0 ? 0 : G - j;
            std::size_t kr = k == 0 ? 0 : G - k;
            if (std::fabs(v[j * G + k] - v[jr * G + kr]) > 1e-12)
                throw input_error("spectral density is not symmetric about the origin");
        }
    return v;
}

// Coefficients for m1 in [0, L], m2 in [-L, L] (the canonical half-space).
inline std::vector<std::complex<double>> quadrature_coeffs_2d(const std::vector<double>& v,
                                                              int grid, long max_lag) {
    auto t = torus_nodes(grid);
    const std::size_t G = static_cast<std::size_t>(grid);
    const long span = 2 * max_lag + 1;
    // stage 1: partial[j][m2+L] = sum_k v[j][k] e^{i m2 t_k}
    std::vector<std::complex<double>> partial(G * static_cast<std::size_t>(span));
    for (std::size_t j = 0; j < G; ++j)
        for (long m2 = -max_lag; m2 <= max_lag; ++m2) {
            double re = 0.0, im = 0.0;
            for (std::size_t k = 0; k < G; ++k) {
                re += v[j * G + k] * std::cos(m2 * t[k]);
                im += v[j * G + k] * std::sin(m2 * t[k]);
            }
            partial[j * static_cast<std::size_t>(span) + static_cast<std::size_t>(m2 + max_lag)] = {re, im};
        }
    std::vector<std::complex<double>> c(static_cast<std::size_t>((max_lag + 1) * span));
    for (long m1 = 0; m1 <= max_lag; ++m1)
        for (long m2 = -max_lag; m2 <= max_lag; ++m2) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t j = 0; j < G; ++j) {
                std::complex<double> e{std::cos(m1 * t[j]), std::sin(m1 * t[j])};
                s += e * partial[j * static_cast<std::size_t>(span) + static_cast<std::size_t>(m2 + max_lag)];
            }
            c[static_cast<std::size_t>(m1 * span + (m2 + max_lag))] = s / static_cast<double>(grid * grid);
        }
    return c;
}

}  // namespace detail

// Fourier coefficients of the density up to |m| <= max_lag. Uses the closed
// form when available; otherwise trapezoidal quadrature on the uniform
// periodic grid, certified by grid doubling.
inline CovarianceKernel fourier_coefficients(const SpectralDensity& b, long max_lag, int grid_size) {
    if (max_lag < 0) throw input_error("fourier_coefficients: max_lag must be >= 0");
    if (grid_size <= 0) throw input_error("fourier_coefficients: grid_size must be positive");
    if (grid_size < 4 * max_lag)
        throw input_error("fourier_coefficients: grid_size must be at least 4*max_lag");
    if (b.dimension < 1 || b.dimension > 2)
        throw input_error("fourier_coefficients: quadrature path supports d in {1,2}");

    CovarianceKernel k;
    k.dimension = b.dimension;
    k.max_lag = max_lag;
    k.analytic = b.analytic_kernel;

    const long span = 2 * max_lag + 1;
    if (b.has_analytic_kernel()) {
        k.source = KernelSource::analytic;
        if (b.dimension == 1) {
            k.table.resize(static_cast<std::size_t>(span));
            for (long m = -max_lag; m <= max_lag; ++m)
                k.table[static_cast<std::size_t>(m + max_lag)] = b.analytic_kernel({std::labs(m), 0});
        } else {
            k.table.resize(static_cast<std::size_t>(span * span));
            for (long m1 = -max_lag; m1 <= max_lag; ++m1)
                for (long m2 = -max_lag; m2 <= max_lag; ++m2) {
                    Lag m{m1, m2};
                    if (m1 < 0 || (m1 == 0 && m2 < 0)) m = {-m1, -m2};
                    k.table[static_cast<std::size_t>((m1 + max_lag) * span + (m2 + max_lag))] =
                        b.analytic_kernel(m);
                }
        }
    } else {
        k.source = KernelSource::quadrature;
        k.grid_size = grid_size;
        double mu0 = 0.0;
        auto check_and_store = [&](const std::vector<std::complex<double>>& c,
                                   const std::vector<std::complex<double>>& c2) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (std::fabs(c[i].imag()) > 1e-10 * mu0)
                    throw accuracy_error("fourier_coefficients: imaginary part above tolerance");
                if (std::fabs(c2[i].real() - c[i].real()) > 1e-8 * mu0)
                    throw accuracy_error(
                        "fourier_coefficients: grid doubling changed a coefficient by more than "
                        "1e-8*mu_hat(0); increase grid_size");
            }
        };
        if (b.dimension == 1) {
            auto v = detail::sampled_values_1d(b, grid_size);
            auto c = detail::quadrature_coeffs_1d(v, max_lag);
            mu0 = c[0].real();
            if (!(mu0 > 0.0)) throw input_error("fourier_coefficients: mu_hat(0) must be positive");
            auto v2 = detail::sampled_values_1d(b, 2 * grid_size);
            auto c2 = detail::quadrature_coeffs_1d(v2, max_lag);
            check_and_store(c, c2);
            k.table.resize(static_cast<std::size_t>(span));
            for (long m = 0; m <= max_lag; ++m) {
                double val = c[static_cast<std::size_t>(m)].real();
                k.table[static_cast<std::size_t>(max_lag + m)] = val;
                k.table[static_cast<std::size_t>(max_lag - m)] = val;
            }
        } else {
            auto v = detail::sampled_values_2d(b, grid_size);
            auto c = detail::quadrature_coeffs_2d(v, grid_size, max_lag);
            mu0 = c[static_cast<std::size_t>(max_lag)].real();
            if (!(mu0 > 0.0)) throw input_error("fourier_coefficients: mu_hat(0) must be positive");
            auto v2 = detail::sampled_values_2d(b, 2 * grid_size);
            auto c2 = detail::quadrature_coeffs_2d(v2, 2 * grid_size, max_lag);
            check_and_store(c, c2);
            k.table.resize(static_cast<std::size_t>(span * span));
            for (long m1 = 0; m1 <= max_lag; ++m1)
                for (long m2 = -max_lag; m2 <= max_lag; ++m2) {
                    double val = c[static_cast<std::size_t>(m1 * span + (m2 + max_lag))].real();
                    k.table[static_cast<std::size_t>((m1 + max_lag) * span + (m2 + max_lag))] = val;
                    k.table[static_cast<std::size_t>((-m1 + max_lag) * span + (-m2 + max_lag))] = val;
                }
        }
    }

    const double mu0 = k.variance();
    if (!(mu0 > 0.0)) throw input_error("fourier_coefficients: degenerate process (mu_hat(0) <= 0)");
    for (double v : k.table)
        if (std::fabs(v) > mu0 * (1.0 + 1e-12))
            throw numerical_error("fourier_coefficients: |mu_hat(m)| exceeds mu_hat(0)");
    return k;
}

// Normalized measure of {t : b(t) <= delta}, estimated by node counting.
struct SublevelMeasure {
    double value = 0.0;
    double resolution = 0.0;  // 1/grid_size
};

inline SublevelMeasure sublevel_measure(const SpectralDensity& b, double delta, int grid_size) {
    if (b.dimension != 1) throw input_error("sublevel_measure: d must be 1");
    if (delta < 0.0) throw input_error("sublevel_measure: delta must be >= 0");
    auto t = detail::torus_nodes(grid_size);
    long count = 0;
    for (double x : t)
        if (b(x) <= delta) ++count;
    return {static_cast<double>(count) / grid_size, 1.0 / grid_size};
}

// ---------------------------------------------------------------------------
// Index sets and covariance matrices
// ---------------------------------------------------------------------------

struct IndexSet {
    int dimension = 1;
    std::vector<Lag> points;

    static IndexSet segment(long N) {
        if (N < 1) throw input_error("IndexSet::segment: N must be >= 1");
        IndexSet A;
        A.dimension = 1;
        for (long i = 1; i <= N; ++i) A.points.push_back({i, 0});
        return A;
    }

    static IndexSet cube(long N1, long N2) {
        if (N1 < 1 || N2 < 1) throw input_error("IndexSet::cube: sides must be >= 1");
        IndexSet A;
        A.dimension = 2;
        for (long i = 1; i <= N1; ++i)
            for (long j = 1; j <= N2; ++j) A.points.push_back({i, j});
        return A;
    }

    static IndexSet of(int dimension, std::vector<Lag> pts) {
        if (pts.empty()) throw input_error("IndexSet: must be non-empty");
        std::set<Lag> distinct(pts.begin(), pts.end());
        if (distinct.size() != pts.size()) throw input_error("IndexSet: points must be distinct");
        IndexSet A;
        A.dimension = dimension;
        A.points = std::move(pts);
        return A;
    }

    std::size_t size() const { return points.size(); }

    // Contiguous ascending 1-d run (a translate of {1..N}).
    bool is_segment() const {
        if (dimension != 1) return false;
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i][0] != points[i - 1][0] + 1) return false;
        return true;
    }
};

enum class MatrixStructure { toeplitz, block_toeplitz, general };

struct CovMatrix {
    IndexSet A;
    Eigen::MatrixXd sigma;
    MatrixStructure structure = MatrixStructure::general;
    double mu0 = 0.0;

    long size() const { return sigma.rows(); }
};

// Sigma_A = (mu_hat(j - k))_{j,k in A}.
inline CovMatrix build_sigma(const CovarianceKernel& kernel, const IndexSet& A) {
    if (A.dimension != kernel.dimension)
        throw input_error("build_sigma: index set and kernel dimension mismatch");
    const long n = static_cast<long>(A.size());
    CovMatrix M;
    M.A = A;
    M.mu0 = kernel.variance();
    M.sigma.resize(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= i; ++j) {
            Lag d{A.points[static_cast<std::size_t>(i)][0] - A.points[static_cast<std::size_t>(j)][0],
                  A.points[static_cast<std::size_t>(i)][1] - A.points[static_cast<std::size_t>(j)][1]};
            double v = kernel.at(d);
            M.sigma(i, j) = v;
            M.sigma(j, i) = v;
        }
    if (A.is_segment())
        M.structure = MatrixStructure::toeplitz;
    else if (A.dimension == 2)
        M.structure = MatrixStructure::block_toeplitz;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.sigma, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numerical_error("build_sigma: eigenvalue check failed");
    if (es.eigenvalues()(0) < -1e-10 * M.mu0)
        throw numerical_error("build_sigma: matrix is not positive semidefinite within tolerance");
    return M;
}

// u^t Sigma_A u computed two ways: the matrix quadratic form, and the
// spectral-side quadrature of |U(t)|^2 b(t) with U(t) = sum_k u_k e^{i<k,t>}.
inline std::pair<double, double> quadratic_form_spectral(const SpectralDensity& b,
                                                         const CovarianceKernel& kernel,
                                                         const IndexSet& A,
                                                         const Eigen::VectorXd& u,
                                                         int grid_size = 1 << 14) {
    if (static_cast<std::size_t>(u.size()) != A.size())
        throw input_error("quadratic_form_spectral: |u| must equal |A|");
    CovMatrix M = build_sigma(kernel, A);
    double lhs = u.dot(M.sigma * u);

    double rhs = 0.0;
    if (b.dimension == 1) {
        auto t = detail::torus_nodes(grid_size);
        for (double x : t) {
            double re = 0.0, im = 0.0;
            for (std::size_t k = 0; k < A.size(); ++k) {
                double phase = static_cast<double>(A.points[k][0]) * x;
                re += u(static_cast<long>(k)) * std::cos(phase);
                im += u(static_cast<long>(k)) * std::sin(phase);
            }
            rhs += (re * re + im * im) * b(x);
        }
        rhs /= grid_size;
    } else {
        auto t = detail::torus_nodes(grid_size);
        for (double x : t)
            for (double y : t) {
                double re = 0.0, im = 0.0;
                for (std::size_t k = 0; k < A.size(); ++k) {
                    double phase = A.points[k][0] * x + A.points[k][1] * y;
                    re += u(static_cast<long>(k)) * std::cos(phase);
                    im += u(static_cast<long>(k)) * std::sin(phase);
                }
                rhs += (re * re + im * im) * b(x, y);
            }
        rhs /= static_cast<double>(grid_size) * grid_size;
    }
    return {lhs, rhs};
}

inline void dump_matrix_csv(const CovMatrix& M, std::ostream& os) {
    for (long i = 0; i < M.size(); ++i) {
        for (long j = 0; j < M.size(); ++j) {
            if (j) os << ',';
            os << M.sigma(i, j);
        }
        os << '\n';
    }
}

}  // namespace persistence
