#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "persistence/bounds.hpp"
#include "persistence/errors.hpp"
#include "persistence/experiments.hpp"
#include "persistence/orthant.hpp"
#include "persistence/spectral_density.hpp"

namespace persistence {

// Process descriptor: {"dimension": d, "family": "...", "params": {...}}.
inline SpectralDensity density_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("process descriptor must be a JSON object");
    int d = j.value("dimension", 1);
    std::string family = j.value("family", "");
    nlohmann::json params = j.value("params", nlohmann::json::object());

    if (family == "white_noise") return white_noise(d);
    if (d != 1) throw input_error("only white_noise supports dimension 2");
    if (family == "one_minus_cos") return one_minus_cos();
    if (family == "band_indicator") return band_indicator();
    if (family == "moving_average") {
        std::vector<double> a;
        if (params.contains("a"))
            a = params["a"].get<std::vector<double>>();
        else if (params.contains("coefficients"))
            a = params["coefficients"].get<std::vector<double>>();
        else
            throw input_error("moving_average requires params.a");
        return moving_average(a);
    }
    if (family == "grid_sampled") {
        if (!params.contains("grid")) throw input_error("grid_sampled requires params.grid");
        return grid_sampled(params["grid"].get<std::vector<double>>());
    }
    throw input_error("unknown family '" + family + "'");
}

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j;
    j["kind"] = bound_kind_name(r.kind);
    j["log_bound"] = r.log_value;
    j["log10_bound"] = r.log10_value();
    j["bound"] = r.value();
    j["params"] = r.params;
    j["notes"] = r.notes;
    j["degenerate"] = r.degenerate;
    j["conditional"] = r.conditional;
    j["parametric_B"] = r.parametric_B;
    j["singular_part_assumed_zero"] = r.singular_part_assumed_zero;
    return j;
}

inline nlohmann::json to_json(const OrthantEstimate& e) {
    nlohmann::json j;
    j["estimate"] = e.estimate;
    j["log10_estimate"] = e.estimate > 0.0 ? std::log10(e.estimate) : -std::numeric_limits<double>::infinity();
    j["std_error"] = e.std_error;
    j["method"] = method_name(e.method);
    j["samples"] = e.samples;
    j["seed"] = e.seed;
    j["unreliable"] = e.unreliable;
    return j;
}

inline nlohmann::json to_json(const ExperimentResult& res) {
    nlohmann::json j;
    j["experiment"] = res.name;
    j["config"] = res.config;
    j["passed"] = res.passed;
    if (res.fit) {
        j["fit"] = {{"c0", res.fit->c0}, {"c1", res.fit->c1}, {"c2", res.fit->c2}, {"rms", res.fit->rms}};
    }
    nlohmann::json rows = nlohmann::json::array();
    auto put = [](nlohmann::json& o, const char* key, const std::optional<double>& v) {
        if (v) o[key] = *v;
    };
    for (const auto& r : res.rows) {
        nlohmann::json o;
        o["n"] = r.n;
        put(o, "estimate", r.estimate);
        put(o, "stderr", r.std_error);
        put(o, "exact", r.exact);
        put(o, "lower_lemma31", r.lower_lemma31);
        put(o, "lower_thm1", r.lower_thm1);
        put(o, "upper_section6", r.upper_section6);
        put(o, "neg_log_upper", r.neg_log_upper);
        put(o, "sigma_min", r.sigma_min);
        put(o, "logdet", r.log_det);
        put(o, "z_score", r.z_score);
        o["inverse_all_positive"] = r.inverse_all_positive;
        o["flagged"] = r.flagged;
        rows.push_back(o);
    }
    j["rows"] = rows;
    return j;
}

}  // namespace persistence
