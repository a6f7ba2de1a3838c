// Acceptance suite: one self-contained check per command-line argument
// ("1".."8"), each printing PASS/FAIL lines per clause and exiting nonzero
// if any clause in the selected check fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "persistence/bounds.hpp"
#include "persistence/covariance.hpp"
#include "persistence/experiments.hpp"
#include "persistence/h_function.hpp"
#include "persistence/highprec.hpp"
#include "persistence/matrix_core.hpp"
#include "persistence/orthant.hpp"
#include "persistence/rng.hpp"

using namespace persistence;

namespace {

bool clause(const char* name, bool ok, const std::string& detail) {
    std::printf("%-58s %s%s%s\n", name, ok ? "PASS" : "FAIL", detail.empty() ? "" : "  -- ",
                detail.c_str());
    return ok;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

CovMatrix wrap(Eigen::MatrixXd m) {
    CovMatrix M;
    M.A = IndexSet::segment(m.rows());
    M.sigma = std::move(m);
    M.mu0 = M.sigma(0, 0);
    return M;
}

// 1. Factorial law: H_X(n) = 1/(n+1)! for b(t) = 2 - 2cos t, |z| <= 4.
bool check_factorial_law() {
    ExperimentResult res = run_example41(7, 1 << 16, 16, 1);
    bool ok = true;
    double worst = 0.0;
    for (const auto& r : res.rows) worst = std::max(worst, std::fabs(r.z_score.value_or(0.0)));
    ok &= clause("factorial law: |z| <= 4 for n = 1..7", res.passed && worst <= 4.0,
                 fmt("max |z| = %.2f over 2^16 x 16 points", worst));
    return ok;
}

// 2. Sampler oracles: arcsine closed forms and plain MC.
bool check_sampler_oracles() {
    SplitMix64 rng(0xACCu, 0u);
    bool qmc_ok = true;
    double worst_z = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        long n = 2 + (trial % 2);
        Eigen::MatrixXd g(n, n + 2);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n + 2; ++j) g(i, j) = rng.next_normal();
        Eigen::MatrixXd s = g * g.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd d = s.diagonal().cwiseSqrt();
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) s(i, j) /= d(i) * d(j);
        CovMatrix M = wrap(s);
        double exact = orthant_closed_form(M).estimate;
        OrthantEstimate e = estimate_qmc(M, 1 << 12, 32, 100 + static_cast<std::uint64_t>(trial));
        double z = std::fabs(e.estimate - exact) / std::max(e.std_error, 1e-12);
        if (std::fabs(e.estimate - exact) > 1e-9) worst_z = std::max(worst_z, z);
        if (z > 3.0 && std::fabs(e.estimate - exact) > 1e-9) qmc_ok = false;
    }
    bool ok = clause("sampler oracles: QMC vs arcsine, 50 matrices, 3 stderr", qmc_ok,
                     fmt("max |z| = %.2f", worst_z));

    bool mc_ok = true;
    double worst_mc = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        long n = 2 + (trial % 7);
        Eigen::MatrixXd g(n, n + 2);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n + 2; ++j) g(i, j) = rng.next_normal();
        Eigen::MatrixXd s = g * g.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd d = s.diagonal().cwiseSqrt();
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) s(i, j) /= d(i) * d(j);
        CovMatrix M = wrap(s);
        OrthantEstimate q = estimate_qmc(M, 1 << 12, 16, 200 + static_cast<std::uint64_t>(trial));
        OrthantEstimate m = estimate_plain_mc(M, 100000, 300 + static_cast<std::uint64_t>(trial));
        double comb = std::sqrt(q.std_error * q.std_error + m.std_error * m.std_error);
        double z = std::fabs(q.estimate - m.estimate) / std::max(comb, 1e-12);
        worst_mc = std::max(worst_mc, z);
        if (z > 3.0) mc_ok = false;
    }
    ok &= clause("sampler oracles: plain MC vs QMC, 20 matrices, n <= 8", mc_ok,
                 fmt("max |z| = %.2f", worst_mc));
    return ok;
}

// 3. Band-indicator upper-bound series: inverse positivity, parabola fit,
//    and consistency with QMC.
bool check_band_upper_bound() {
    ExperimentResult res = run_section6(24);
    bool pos = true;
    for (const auto& r : res.rows) pos &= r.inverse_all_positive;
    bool ok = clause("band upper bound: Sigma_N^{-1} > 0 entrywise, N <= 24", pos, "");

    const QuadraticFit& f = *res.fit;
    bool window = std::fabs(f.c0 - 3.1) <= 0.25 && std::fabs(f.c1 + 0.8) <= 0.25 &&
                  std::fabs(f.c2 - 0.57) <= 0.25;
    bool convex = f.c2 >= 0.4;
    ok &= clause("band upper bound: fit within +/-0.25 of (3.1,-0.8,0.57)", window,
                 fmt("fitted (%.4f, %.4f, %.4f)", f.c0, f.c1, f.c2));
    ok &= clause("band upper bound: quadratic coefficient >= 0.4", convex, fmt("c2 = %.4f", f.c2));

    CovarianceKernel k = fourier_coefficients(band_indicator(), 14, 1 << 10);
    bool below = true;
    double worst_gap = 0.0;
    for (long N = 1; N <= 14; ++N) {
        CovMatrix M = build_sigma(k, IndexSet::segment(N));
        OrthantEstimate e = estimate_qmc(M, 1 << 13, 16, 77);
        double hhat = std::exp(-res.rows[static_cast<std::size_t>(N - 1)].neg_log_upper.value());
        double gap = e.estimate - (hhat + 3.0 * e.std_error);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 0.0) below = false;
    }
    ok &= clause("band upper bound: QMC <= H_hat + 3 stderr, N <= 14", below,
                 fmt("worst excess %.3g", worst_gap));
    return ok;
}

// 4. Eigenvalue sandwich and determinant bound over random trigonometric
//    polynomial densities.
bool check_eigenvalue_sandwich() {
    SplitMix64 rng(0x5a11d0u, 0u);
    bool sandwich = true, det_ok = true;
    double worst_lo = 0.0, worst_hi = 0.0, worst_det = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int deg = 1 + static_cast<int>(rng.next_u32() % 8u);
        std::vector<double> a(static_cast<std::size_t>(deg) + 1);
        for (auto& x : a) x = 2.0 * rng.next_double() - 1.0;
        a[0] += (a[0] >= 0 ? 0.25 : -0.25);
        SpectralDensity b = moving_average(a);
        long N = 2 + static_cast<long>(rng.next_u32() % 63u);

        double lo = 1e300, hi = -1e300;
        const int G = 1 << 12;
        for (int j = 0; j < G; ++j) {
            double v = b(-M_PI + 2.0 * M_PI * j / G);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CovarianceKernel k = fourier_coefficients(b, N, std::max(256L, 4 * N));
        CovMatrix M = build_sigma(k, IndexSet::segment(N));
        EigenExtremes ex = eigen_extremes(M);
        worst_lo = std::max(worst_lo, lo - ex.sigma_min);
        worst_hi = std::max(worst_hi, ex.sigma_max - hi);
        if (ex.sigma_min < lo - 1e-8 || ex.sigma_max > hi + 1e-8) sandwich = false;

        InverseReport inv = invert_and_logdet(M);
        double excess = inv.log_det - static_cast<double>(N) * std::log(k.variance());
        worst_det = std::max(worst_det, excess);
        if (excess > 1e-8) det_ok = false;
    }
    bool ok = clause("eigenvalue sandwich: ess-inf/ess-sup, 100 densities", sandwich,
                     fmt("worst low/high slack %.2g / %.2g", worst_lo, worst_hi));
    ok &= clause("determinant bound: log det <= N log mu_hat(0)", det_ok,
                 fmt("worst excess %.2g", worst_det));
    return ok;
}

// 5. Tridiagonal Toeplitz closed form.
bool check_tridiagonal_eigenvalue() {
    CovarianceKernel k = fourier_coefficients(one_minus_cos(), 64, 1 << 10);
    double worst = 0.0;
    for (long N = 2; N <= 64; ++N) {
        CovMatrix M = build_sigma(k, IndexSet::segment(N));
        EigenExtremes ex = eigen_extremes(M);
        double s = std::sin(M_PI / (2.0 * static_cast<double>(N + 1)));
        worst = std::max(worst, std::fabs(ex.sigma_min - 4.0 * s * s));
    }
    return clause("tridiagonal sigma_min = 4 sin^2(pi/(2(N+1))), N <= 64", worst <= 1e-10,
                  fmt("max |error| = %.2g", worst));
}

// 6. h-construction properties across dimensions and scales.
bool check_h_construction() {
    bool hat0 = true, hat_min = true, sup1 = true, plateau = true;
    double worst_hat0 = 0.0, worst_min = 0.0, worst_sup = 0.0, worst_plateau = 0.0;
    for (int d : {1, 2}) {
        for (double ep : {1.0 / 16.0, 1.0 / 8.0, 3.0 / 16.0}) {
            HFunction h = build_h(d, ep);
            worst_hat0 = std::max(worst_hat0, std::fabs(h.fourier({0, 0})));
            if (std::fabs(h.fourier({0, 0})) > 1e-12) hat0 = false;
            for (long m1 = -128; m1 <= 128; ++m1) {
                long top = d == 2 ? 128 : 0;
                for (long m2 = -top; m2 <= top; ++m2) {
                    double v = h.fourier({m1, m2});
                    worst_min = std::min(worst_min, v);
                    if (v < -1e-12) hat_min = false;
                }
            }
            const int G = d == 1 ? 8192 : 512;
            double sup = -1e300, pl = 0.0;
            for (int i = 0; i < G; ++i) {
                double t1 = -M_PI + 2.0 * M_PI * i / G;
                for (int j = 0; j < (d == 2 ? G : 1); ++j) {
                    double t2 = d == 2 ? -M_PI + 2.0 * M_PI * j / G : 0.0;
                    double v = h({t1, t2});
                    sup = std::max(sup, v);
                    double far = std::max(std::fabs(t1), d == 2 ? std::fabs(t2) : 0.0);
                    if (far > 2.0 * M_PI * ep)
                        pl = std::max(pl, std::fabs(v + std::pow(ep, d)));
                }
            }
            double sup_err = std::max(std::fabs(h({0.0, 0.0}) - 1.0), sup - 1.0);
            worst_sup = std::max(worst_sup, sup_err);
            if (sup_err > 1e-12) sup1 = false;
            worst_plateau = std::max(worst_plateau, pl);
            if (pl > 1e-10) plateau = false;
        }
    }
    bool ok = clause("h: hat(h)(0) = 0 within 1e-12", hat0, fmt("max = %.2g", worst_hat0));
    ok &= clause("h: min hat(h)(m) >= -1e-12 over |m| <= 128", hat_min,
                 fmt("min = %.2g", worst_min));
    ok &= clause("h: sup h = h(0) = 1 within 1e-12", sup1, fmt("max error = %.2g", worst_sup));
    ok &= clause("h: plateau equals -eps'^d within 1e-10", plateau,
                 fmt("max deviation = %.2g (exact plateau is -eps'^d/(1-eps'^d))", worst_plateau));
    return ok;
}

// 7. Slepian surrogate pipeline on two densities.
bool check_surrogate_pipeline() {
    struct Case {
        const char* name;
        SpectralDensity b;
        double delta, eps;
        int grid;
    };
    SpectralDensity trunc = custom_density(
        1, [](const TorusPoint& t) { return std::max(1.0 + std::cos(t[0]), 0.5); });
    std::vector<Case> cases;
    cases.push_back({"white noise", white_noise(1), 1.0, M_PI / 8.0, 1 << 14});
    cases.push_back({"truncated 1+cos", trunc, 0.5, M_PI / 2.0, 1 << 16});

    bool ok = true;
    for (auto& c : cases) {
        Theorem1Result t1 = theorem1_lower_bound(c.b, c.delta, c.eps, IndexSet::segment(1), 128, c.grid);

        CovarianceKernel base = fourier_coefficients(c.b, 128, c.grid);
        double worst_viol = 0.0, eq0 = 0.0;
        for (long m = -128; m <= 128; ++m) {
            double diff = base.at({m, 0}) - t1.surrogate.analytic_kernel({m, 0});
            if (m == 0)
                eq0 = std::fabs(diff);
            else
                worst_viol = std::max(worst_viol, -diff);
        }
        bool slepian = worst_viol <= 1e-10 && eq0 <= 1e-10;
        ok &= clause((std::string("surrogate order, equality at 0: ") + c.name).c_str(), slepian,
                     fmt("worst violation %.2g, |eq 0| %.2g", worst_viol, eq0));

        CovarianceKernel sk = fourier_coefficients(t1.surrogate, 64, 1 << 10);
        double worst_floor = 1e300;
        for (long N = 2; N <= 64; ++N) {
            CovMatrix M = build_sigma(sk, IndexSet::segment(N));
            EigenExtremes ex = eigen_extremes(M);
            worst_floor = std::min(worst_floor, ex.sigma_min - t1.b_tilde_star);
        }
        ok &= clause((std::string("surrogate sigma_min >= floor - 1e-8: ") + c.name).c_str(),
                     worst_floor >= -1e-8, fmt("min slack %.2g", worst_floor));

        // the bound is exp(-gamma N); reuse the per-index rate instead of
        // re-running the full pipeline for every N
        const double gamma = t1.report.params.at("gamma_per_index");
        bool below = true;
        double worst_gap = 0.0;
        for (long N = 1; N <= 12; ++N) {
            CovMatrix M = build_sigma(base, IndexSet::segment(N));
            OrthantEstimate e = estimate_qmc(M, 1 << 13, 16, 55);
            double gap = std::exp(-gamma * static_cast<double>(N)) - (e.estimate + 3.0 * e.std_error);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 0.0) below = false;
        }
        ok &= clause((std::string("surrogate bound <= QMC + 3 stderr: ") + c.name).c_str(), below,
                     fmt("worst excess %.3g", worst_gap));
    }
    return ok;
}

// 8. Eigenvalue floors at B = 1 and the N log N scale.
bool check_eigenvalue_floors() {
    bool floors_ok = true;
    std::string worst_note;
    double worst_ratio = 0.0;

    struct DCase {
        const char* name;
        SpectralDensity b;
        bool highprec;
    };
    std::vector<DCase> cases;
    cases.push_back({"white_noise", white_noise(1), false});
    cases.push_back({"one_minus_cos", one_minus_cos(), false});
    cases.push_back({"band_indicator", band_indicator(), true});

    for (auto& c : cases) {
        CovarianceKernel k = fourier_coefficients(c.b, 64, 1 << 10);
        std::vector<double> sigma_min(65, 0.0);
        if (c.highprec) {
            // sigma_min far below double roundoff: extended precision
            auto rows = section6_series(band_indicator_kernel_big, 64);
            for (const auto& r : rows) sigma_min[static_cast<std::size_t>(r.N)] = r.sigma_min;
        } else {
            for (long N = 1; N <= 64; ++N) {
                CovMatrix M = build_sigma(k, IndexSet::segment(N));
                sigma_min[static_cast<std::size_t>(N)] = eigen_extremes(M).sigma_min;
            }
        }
        double C = 0.0, p = 0.0;
        bool have_plaw = true;
        try {
            std::tie(C, p) = fit_sublevel_power(c.b, 1 << 14);
        } catch (const hypothesis_error&) {
            have_plaw = false;  // no admissible power law for this density
        }
        for (long N = 1; N <= 64; ++N) {
            std::vector<double> floors;
            try {
                floors.push_back(theorem2_generic_bound(c.b, N, 1.0, 1 << 14).params.at("eig_floor"));
            } catch (const hypothesis_error&) {
            }
            if (have_plaw) {
                try {
                    floors.push_back(
                        theorem2_plaw_bound(c.b, N, 1.0, C, p, 1 << 14).params.at("eig_floor"));
                } catch (const hypothesis_error&) {
                }
            }
            for (double fl : floors) {
                double ratio = fl / sigma_min[static_cast<std::size_t>(N)];
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_note = std::string(c.name) +
                                 fmt(" N = %.0f: floor/sigma_min = %.3g", static_cast<double>(N), ratio);
                }
                if (fl > sigma_min[static_cast<std::size_t>(N)] * (1.0 + 1e-9)) floors_ok = false;
            }
        }
    }
    bool ok = clause("floors at B = 1 never exceed sigma_min, N <= 64", floors_ok, worst_note);

    CovarianceKernel k = fourier_coefficients(one_minus_cos(), 64, 1 << 10);
    double lo = 1e300, hi = -1e300;
    for (long N : {8L, 16L, 32L, 64L}) {
        CovMatrix M = build_sigma(k, IndexSet::segment(N));
        BoundReport r = lemma31_lower_bound(M, 2.0);
        double scale = -r.log_value / (static_cast<double>(N) * std::log(static_cast<double>(N)));
        lo = std::min(lo, scale);
        hi = std::max(hi, scale);
    }
    double variation = (hi - lo) / lo;
    ok &= clause("-log(bound)/(N log N) varies < 25% over N in {8..64}", variation < 0.25,
                 fmt("variation = %.1f%% (range %.4f..%.4f)", 100.0 * variation, lo, hi));
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <1..8>\n");
        return 2;
    }
    int which = std::atoi(argv[1]);
    bool ok = false;
    switch (which) {
        case 1: ok = check_factorial_law(); break;
        case 2: ok = check_sampler_oracles(); break;
        case 3: ok = check_band_upper_bound(); break;
        case 4: ok = check_eigenvalue_sandwich(); break;
        case 5: ok = check_tridiagonal_eigenvalue(); break;
        case 6: ok = check_h_construction(); break;
        case 7: ok = check_surrogate_pipeline(); break;
        case 8: ok = check_eigenvalue_floors(); break;
        default: std::fprintf(stderr, "usage: acceptance <1..8>\n"); return 2;
    }
    return ok ? 0 : 1;
}
