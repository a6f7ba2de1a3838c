// Command-line driver: spectral densities in, kernels / bounds / estimates /
// experiment reproductions out (CSV or JSON).
//
// Exit codes: 0 success, 1 experiment acceptance failure, 2 input or
// hypothesis error, 3 numerical error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "persistence/bounds.hpp"
#include "persistence/covariance.hpp"
#include "persistence/experiments.hpp"
#include "persistence/h_function.hpp"
#include "persistence/json_io.hpp"
#include "persistence/orthant.hpp"

namespace {

using nlohmann::json;
using namespace persistence;

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw input_error("cannot open output file " + out_path);
    os << payload;
}

SpectralDensity load_density(const std::string& path, json* echo) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open process descriptor " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw input_error(std::string("invalid JSON in process descriptor: ") + e.what());
    }
    if (echo) *echo = j;
    return density_from_json(j);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run(int argc, char** argv) {
    CLI::App app{"persistence probabilities of stationary Gaussian processes on Z^d"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "output file (default: stdout)")->capture_default_str();

    // kernel
    auto* kernel_cmd = app.add_subcommand("kernel", "Fourier coefficients of the spectral density (CSV)");
    std::string kernel_process;
    long kernel_max_lag = 16;
    int kernel_grid = 1 << 14;
    kernel_cmd->add_option("process", kernel_process, "process descriptor JSON")->required();
    kernel_cmd->add_option("--max-lag", kernel_max_lag, "largest lag")->capture_default_str();
    kernel_cmd->add_option("--grid", kernel_grid, "quadrature grid size")->capture_default_str();

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "all applicable bounds for H_X(N) (JSON)");
    std::string bounds_process;
    long bounds_N = 8;
    double bounds_delta = 0.0, bounds_eps = 0.0, bounds_B = 1.0, bounds_C = 0.0, bounds_p = 0.0;
    int bounds_grid = 1 << 14;
    bounds_cmd->add_option("process", bounds_process)->required();
    bounds_cmd->add_option("--N", bounds_N)->capture_default_str();
    bounds_cmd->add_option("--delta", bounds_delta, "Theorem 1 floor of b near 0");
    bounds_cmd->add_option("--eps", bounds_eps, "Theorem 1 radius (radians)");
    bounds_cmd->add_option("--B", bounds_B, "Nazarov constant parameter")->capture_default_str();
    bounds_cmd->add_option("--C", bounds_C, "power-law constant (fit if omitted)");
    bounds_cmd->add_option("--p", bounds_p, "power-law exponent (fit if omitted)");
    bounds_cmd->add_option("--grid", bounds_grid)->capture_default_str();

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "randomized-QMC estimate of H_X(N) (JSON)");
    std::string est_process;
    long est_N = 8;
    std::uint64_t est_points = 1 << 14, est_rand = 16, est_seed = 1;
    est_cmd->add_option("process", est_process)->required();
    est_cmd->add_option("--N", est_N)->capture_default_str();
    est_cmd->add_option("--points", est_points)->capture_default_str();
    est_cmd->add_option("--rand", est_rand)->capture_default_str();
    est_cmd->add_option("--seed", est_seed)->capture_default_str();

    // example41
    auto* ex41_cmd = app.add_subcommand("example41", "factorial-law experiment for b = 2 - 2cos t");
    long ex41_n_max = 8;
    std::uint64_t ex41_points = 1 << 16, ex41_rand = 16, ex41_seed = 1;
    bool ex41_json = false;
    ex41_cmd->add_option("--n-max", ex41_n_max)->capture_default_str();
    ex41_cmd->add_option("--points", ex41_points)->capture_default_str();
    ex41_cmd->add_option("--rand", ex41_rand)->capture_default_str();
    ex41_cmd->add_option("--seed", ex41_seed)->capture_default_str();
    ex41_cmd->add_flag("--json", ex41_json, "emit JSON instead of CSV");

    // section6
    auto* s6_cmd = app.add_subcommand("section6", "band-indicator upper-bound experiment");
    long s6_n_max = 24;
    bool s6_json = false;
    s6_cmd->add_option("--n-max", s6_n_max)->capture_default_str();
    s6_cmd->add_flag("--json", s6_json, "emit JSON instead of CSV");

    // hcheck
    auto* h_cmd = app.add_subcommand("hcheck", "verify the h-construction properties (JSON)");
    int h_d = 1;
    double h_eps = 0.125, h_lambda = 0.0;
    std::string h_form = "convolution";
    int h_grid = 4096;
    h_cmd->add_option("--d", h_d)->capture_default_str();
    h_cmd->add_option("--eps", h_eps, "eps_prime, fraction of the torus in (0, 1/4)")->capture_default_str();
    h_cmd->add_option("--form", h_form, "convolution | geometric")->capture_default_str();
    h_cmd->add_option("--lambda", h_lambda, "geometric parameter (default midpoint)");
    h_cmd->add_option("--grid", h_grid)->capture_default_str();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (*kernel_cmd) {
        json echo;
        SpectralDensity b = load_density(kernel_process, &echo);
        CovarianceKernel k = fourier_coefficients(b, kernel_max_lag, kernel_grid);
        std::ostringstream os;
        os << "# process=" << echo.dump() << " max_lag=" << kernel_max_lag
           << " grid=" << kernel_grid << "\n";
        os << "m,mu_hat\n";
        for (long m = 0; m <= kernel_max_lag; ++m) os << m << ',' << fmt(k.at({m, 0})) << '\n';
        emit(out_path, os.str());
        return 0;
    }

    if (*bounds_cmd) {
        json echo;
        SpectralDensity b = load_density(bounds_process, &echo);
        CovarianceKernel k = fourier_coefficients(b, std::max<long>(bounds_N, 1), bounds_grid);
        CovMatrix M = build_sigma(k, IndexSet::segment(bounds_N));
        json out;
        out["config"] = {{"process", echo}, {"N", bounds_N}, {"delta", bounds_delta},
                         {"eps", bounds_eps}, {"B", bounds_B}, {"C", bounds_C},
                         {"p", bounds_p}, {"grid", bounds_grid}};
        json reports = json::array();
        reports.push_back(to_json(lemma31_lower_bound(M, k.variance())));
        auto guarded = [&](const char* kind, auto&& fn) {
            try {
                reports.push_back(to_json(fn()));
            } catch (const hypothesis_error& e) {
                reports.push_back({{"kind", kind}, {"error", e.what()}});
            }
        };
        if (bounds_delta > 0.0 && bounds_eps > 0.0)
            guarded("theorem1_lower", [&] {
                return theorem1_lower_bound(b, bounds_delta, bounds_eps,
                                            IndexSet::segment(bounds_N), 128, bounds_grid)
                    .report;
            });
        if (b.dimension == 1) {
            guarded("theorem2_generic_lower",
                    [&] { return theorem2_generic_bound(b, bounds_N, bounds_B, bounds_grid); });
            guarded("theorem2_plaw_lower", [&] {
                double C = bounds_C, p = bounds_p;
                if (!(C > 0.0) || !(p > 0.0)) std::tie(C, p) = fit_sublevel_power(b, bounds_grid);
                return theorem2_plaw_bound(b, bounds_N, bounds_B, C, p, bounds_grid);
            });
        }
        try {
            reports.push_back(to_json(section6_upper_bound(M)));
        } catch (const numerical_error& e) {
            reports.push_back({{"kind", "section6_upper"}, {"error", e.what()}});
        }
        out["bounds"] = reports;
        emit(out_path, out.dump(2) + "\n");
        return 0;
    }

    if (*est_cmd) {
        json echo;
        SpectralDensity b = load_density(est_process, &echo);
        CovarianceKernel k = fourier_coefficients(b, est_N, 1 << 14);
        CovMatrix M = build_sigma(k, IndexSet::segment(est_N));
        OrthantEstimate e = estimate_qmc(M, est_points, est_rand, est_seed);
        json out = to_json(e);
        out["config"] = {{"process", echo}, {"N", est_N}, {"points", est_points},
                         {"rand", est_rand}, {"seed", est_seed}};
        emit(out_path, out.dump(2) + "\n");
        return 0;
    }

    if (*ex41_cmd) {
        ExperimentResult res = run_example41(ex41_n_max, ex41_points, ex41_rand, ex41_seed);
        if (ex41_json) {
            emit(out_path, to_json(res).dump(2) + "\n");
        } else {
            std::ostringstream os;
            write_experiment_csv(res, os);
            emit(out_path, os.str());
        }
        return res.passed ? 0 : 1;
    }

    if (*s6_cmd) {
        ExperimentResult res = run_section6(s6_n_max);
        if (s6_json) {
            emit(out_path, to_json(res).dump(2) + "\n");
        } else {
            std::ostringstream os;
            write_experiment_csv(res, os);
            os << "# fit: c0=" << fmt(res.fit->c0) << " c1=" << fmt(res.fit->c1)
               << " c2=" << fmt(res.fit->c2) << " rms=" << fmt(res.fit->rms) << "\n";
            emit(out_path, os.str());
        }
        return res.passed ? 0 : 1;
    }

    if (*h_cmd) {
        HConstruction form;
        if (h_form == "convolution")
            form = HConstruction::convolution;
        else if (h_form == "geometric")
            form = HConstruction::geometric;
        else
            throw input_error("hcheck: --form must be convolution or geometric");
        HFunction h = build_h(h_d, h_eps, form, h_lambda);
        double min_fourier = 0.0;
        for (long m = -128; m <= 128; ++m) {
            if (h_d == 1) {
                min_fourier = std::min(min_fourier, h.fourier({m, 0}));
            } else {
                for (long m2 = -128; m2 <= 128; ++m2)
                    min_fourier = std::min(min_fourier, h.fourier({m, m2}));
            }
        }
        double sup_h = -1e300, plateau_max = -1e300;
        for (int i = 0; i < h_grid; ++i) {
            double t1 = -M_PI + 2.0 * M_PI * i / h_grid;
            if (h_d == 1) {
                double v = h(t1);
                sup_h = std::max(sup_h, v);
                if (std::fabs(t1) > 2.0 * M_PI * h.eps_prime) plateau_max = std::max(plateau_max, v);
            } else {
                for (int j = 0; j < h_grid; ++j) {
                    double t2 = -M_PI + 2.0 * M_PI * j / h_grid;
                    double v = h({t1, t2});
                    sup_h = std::max(sup_h, v);
                    if (std::max(std::fabs(t1), std::fabs(t2)) > 2.0 * M_PI * h.eps_prime)
                        plateau_max = std::max(plateau_max, v);
                }
            }
        }
        json out;
        out["config"] = {{"d", h_d}, {"eps_prime", h_eps}, {"form", h_form}, {"grid", h_grid}};
        out["h0"] = h({0.0, 0.0});
        out["fourier_at_0"] = h.fourier({0, 0});
        out["min_fourier"] = min_fourier;
        out["sup_h"] = sup_h;
        out["plateau_max"] = plateau_max;
        out["beta"] = h.beta;
        bool p1 = std::fabs(h.fourier({0, 0})) <= 1e-12 && min_fourier >= -1e-12;
        bool p2 = sup_h <= 1.0 + 1e-12 && std::fabs(h({0.0, 0.0}) - 1.0) <= 1e-12;
        bool p3 = plateau_max <= -h.beta + 1e-10;
        out["pass"] = {{"nonneg_fourier_and_zero_mean", p1}, {"sup_is_h0_is_1", p2},
                       {"plateau_below_minus_beta", p3}};
        emit(out_path, out.dump(2) + "\n");
        return (p1 && p2 && p3) ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const persistence::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const persistence::hypothesis_error& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 2;
    } catch (const persistence::accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const persistence::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
