#include "conegeo/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace conegeo {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!known.count(key))
            throw ConfigError("unknown config key \"" + where + key + "\"");
}

double num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("config key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

int integer(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw ConfigError("config key \"" + key + "\" must be an integer");
    return j.at(key).get<int>();
}

}  // namespace

bool ExperimentConfig::suite_enabled(const std::string& name) const {
    if (suites.empty()) return name != "mink1-strict";  // strict is opt-in
    return std::find(suites.begin(), suites.end(), name) != suites.end();
}

std::shared_ptr<const ConeGeometry> ExperimentConfig::make_cone() const {
    return make_cone(cone.alpha, cone.delta);
}

std::shared_ptr<const ConeGeometry> ExperimentConfig::make_cone(double a, double d) const {
    if (cone.family == "cap") return std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(a));
    if (cone.family == "perturbed_cap")
        return std::make_shared<ConeGeometry>(SphericalDomainSpec::perturbed_cap(a, d, cone.k));
    if (cone.family == "wedge")
        return std::make_shared<ConeGeometry>(SphericalDomainSpec::wedge(a));
    throw ConfigError("unknown cone family \"" + cone.family + "\"");
}

RadialProfile ExperimentConfig::make_profile(const ConeGeometry& cg) const {
    return make_profile(cg, profile.eps);
}

RadialProfile ExperimentConfig::make_profile(const ConeGeometry& cg, double eps) const {
    const int N = cg.ambient_dim();
    const double alpha = cg.domain().alpha;
    if (profile.family == "constant") return RadialProfile::constant(profile.R);
    if (profile.family == "axisym") return RadialProfile::axisym(N, profile.R, eps, alpha);
    if (profile.family == "bump") return RadialProfile::bump(N, profile.R, eps, profile.k, alpha);
    if (profile.family == "linear_violation")
        return RadialProfile::linear_violation(N, profile.R, eps, alpha);
    throw ConfigError("unknown profile family \"" + profile.family + "\"");
}

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    reject_unknown(j,
                   {"dimension", "cone", "profile", "quadrature", "mesh_levels", "suites", "seed",
                    "out_dir", "plots", "flow_t_step", "sweep", "thresholds", "threads"},
                   "");

    ExperimentConfig cfg;
    cfg.dimension = integer(j, "dimension", 3);
    if (cfg.dimension != 2 && cfg.dimension != 3)
        throw ConfigError("dimension must be 2 or 3");

    if (!j.contains("cone") || !j.at("cone").is_object() || j.at("cone").size() != 1)
        throw ConfigError("config needs a \"cone\" object with exactly one family");
    {
        const auto& [family, params] = *j.at("cone").items().begin();
        cfg.cone.family = family;
        if (family == "cap") {
            reject_unknown(params, {"alpha"}, "cone.cap.");
            cfg.cone.alpha = num(params, "alpha", 1.2);
        } else if (family == "perturbed_cap") {
            reject_unknown(params, {"alpha", "delta", "k"}, "cone.perturbed_cap.");
            cfg.cone.alpha = num(params, "alpha", 1.2);
            cfg.cone.delta = num(params, "delta", 0.1);
            cfg.cone.k = integer(params, "k", 3);
        } else if (family == "wedge") {
            reject_unknown(params, {"angle"}, "cone.wedge.");
            cfg.cone.alpha = num(params, "angle", 1.0);
        } else {
            throw ConfigError("unknown cone family \"" + family + "\"");
        }
    }
    if (cfg.cone.family == "wedge" && cfg.dimension != 2)
        throw ConfigError("wedge cones require dimension 2");
    if (cfg.cone.family != "wedge" && cfg.dimension != 3)
        throw ConfigError("cap cones require dimension 3");

    if (!j.contains("profile") || !j.at("profile").is_object() || j.at("profile").size() != 1)
        throw ConfigError("config needs a \"profile\" object with exactly one family");
    {
        const auto& [family, params] = *j.at("profile").items().begin();
        cfg.profile.family = family;
        if (family == "constant") {
            reject_unknown(params, {"R"}, "profile.constant.");
            cfg.profile.R = num(params, "R", 1.0);
        } else if (family == "axisym" || family == "linear_violation") {
            reject_unknown(params, {"R", "eps"}, "profile." + family + ".");
            cfg.profile.R = num(params, "R", 1.0);
            cfg.profile.eps = num(params, "eps", 0.1);
        } else if (family == "bump") {
            reject_unknown(params, {"R", "eps", "k"}, "profile.bump.");
            cfg.profile.R = num(params, "R", 1.0);
            cfg.profile.eps = num(params, "eps", 0.1);
            cfg.profile.k = integer(params, "k", 2);
        } else {
            throw ConfigError("unknown profile family \"" + family + "\"");
        }
    }

    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        reject_unknown(q, {"n_phi", "n_s", "n_b", "levels"}, "quadrature.");
        cfg.n_phi = integer(q, "n_phi", cfg.n_phi);
        cfg.n_s = integer(q, "n_s", cfg.n_s);
        cfg.n_b = integer(q, "n_b", cfg.n_b);
        cfg.levels = integer(q, "levels", cfg.levels);
        if (cfg.n_phi < 4 || cfg.n_s < 2 || cfg.n_b < 4 || cfg.levels < 1)
            throw ConfigError("quadrature resolutions out of range");
    }

    if (j.contains("mesh_levels")) {
        if (!j.at("mesh_levels").is_array()) throw ConfigError("mesh_levels must be an array");
        cfg.mesh_levels.clear();
        for (const auto& v : j.at("mesh_levels")) {
            if (!v.is_number_integer()) throw ConfigError("mesh_levels entries must be integers");
            cfg.mesh_levels.push_back(v.get<int>());
        }
        if (cfg.mesh_levels.empty()) throw ConfigError("mesh_levels must not be empty");
    }

    if (j.contains("suites")) {
        if (!j.at("suites").is_array()) throw ConfigError("suites must be an array of names");
        for (const auto& v : j.at("suites")) cfg.suites.push_back(v.get<std::string>());
        const std::set<std::string> known = {"mink1", "mink1-strict", "mink2",
                                             "divergence", "pointwise", "flow", "rigidity"};
        for (const auto& s : cfg.suites)
            if (!known.count(s)) throw ConfigError("unknown suite \"" + s + "\"");
    }

    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("plots")) cfg.plots = j.at("plots").get<bool>();
    cfg.flow_t_step = num(j, "flow_t_step", cfg.flow_t_step);
    if (j.contains("threads")) cfg.threads = integer(j, "threads", 1);

    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        reject_unknown(s, {"axis", "values"}, "sweep.");
        cfg.sweep.axis = s.contains("axis") ? s.at("axis").get<std::string>() : "";
        if (s.contains("values")) {
            cfg.sweep.values_given = true;
            for (const auto& v : s.at("values")) cfg.sweep.values.push_back(v.get<double>());
        }
    }

    if (j.contains("thresholds")) {
        const auto& t = j.at("thresholds");
        reject_unknown(t,
                       {"divergence_residual", "mink1_sector", "mink1_orthogonal",
                        "mink2_residual", "boundary_forms_rel", "pointwise", "flow_slope_rel",
                        "flow_claim_rel", "orthogonality", "chain_identity", "reilly",
                        "frame_energy"},
                       "thresholds.");
        auto& th = cfg.thresholds;
        th.divergence_residual = num(t, "divergence_residual", th.divergence_residual);
        th.mink1_sector = num(t, "mink1_sector", th.mink1_sector);
        th.mink1_orthogonal = num(t, "mink1_orthogonal", th.mink1_orthogonal);
        th.mink2_residual = num(t, "mink2_residual", th.mink2_residual);
        th.boundary_forms_rel = num(t, "boundary_forms_rel", th.boundary_forms_rel);
        th.pointwise = num(t, "pointwise", th.pointwise);
        th.flow_slope_rel = num(t, "flow_slope_rel", th.flow_slope_rel);
        th.flow_claim_rel = num(t, "flow_claim_rel", th.flow_claim_rel);
        th.orthogonality = num(t, "orthogonality", th.orthogonality);
        th.chain_identity = num(t, "chain_identity", th.chain_identity);
        th.reilly = num(t, "reilly", th.reilly);
        th.frame_energy = num(t, "frame_energy", th.frame_energy);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_json(text);
}

}  // namespace conegeo
