#include "conegeo/runner.hpp"

#include <cstdlib>
#include <nlohmann/json.hpp>
#include <random>

#include "conegeo/identities.hpp"
#include "conegeo/report.hpp"
#include "conegeo/spectral.hpp"
#include "conegeo/stability.hpp"

namespace conegeo {

using nlohmann::json;

void ResultBundle::add_check(std::string name, double value, double threshold,
                             std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.pass = std::isfinite(value) && value <= threshold;
    c.detail = std::move(detail);
    pass = pass && c.pass;
    checks.push_back(std::move(c));
}

std::string ResultBundle::summary() const {
    std::string s;
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %-34s %.6e <= %.1e %s\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold,
                      c.detail.c_str());
        s += line;
    }
    return s;
}

std::filesystem::path resolve_out_dir(const std::string& cli_out, const ExperimentConfig& cfg) {
    if (!cli_out.empty()) return cli_out;
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("CONEGEO_OUT_DIR"); env && *env) return env;
    return "conegeo_out";
}

namespace {

json json_of(const IdentityReport& r) {
    json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["residual"] = r.residual;
    j["n_phi"] = r.n_phi;
    j["n_s"] = r.n_s;
    j["n_b"] = r.n_b;
    j["table_ref"] = r.table_ref;
    for (const auto& [k, v] : r.extras) j["extras"][k] = v;
    return j;
}

json json_of(const RigidityReport& r) {
    json j;
    j["H_bar"] = r.H_bar;
    j["cmc_deviation"] = r.cmc_deviation;
    j["sign_condition"] = r.sign_condition;
    j["umbilicity_defect_integral"] = r.umbilicity_defect_integral;
    j["umbilicity_defect_pointwise"] = r.umbilicity_defect_pointwise;
    j["min_support"] = r.min_support;
    j["starshaped"] = r.starshaped;
    j["chain_identity_error"] = r.chain_identity_error;
    j["area"] = r.area;
    return j;
}

json json_of(const StabilityReport& r) {
    json j;
    j["H_bar"] = r.H_bar;
    j["cmc_deviation"] = r.cmc_deviation;
    j["label"] = r.label;
    j["u_bar_integral"] = r.u_bar_integral;
    j["Q_form"] = r.Q_form;
    j["frame_term"] = r.frame_term;
    j["eigen_term"] = r.eigen_term;
    j["lambda1"] = r.lambda1;
    j["lambda1_uncertainty"] = r.lambda1_uncertainty;
    j["rel_lhs"] = r.rel_lhs;
    j["rel_rhs"] = r.rel_rhs;
    j["margin"] = r.margin;
    j["margin_low"] = r.margin_low;
    j["margin_high"] = r.margin_high;
    j["flatness_correction"] = r.flatness_correction;
    j["chain_error"] = r.chain_error;
    for (int a = 0; a < r.F0.size(); ++a) j["F0"].push_back(r.F0[a]);
    return j;
}

json json_of(const SpectralResult& r) {
    json j;
    j["lambda1"] = r.lambda1;
    j["residual"] = r.residual;
    j["constant_orthogonality"] = r.constant_orthogonality;
    j["iterations"] = r.iterations;
    j["extrapolated"] = r.extrapolated;
    j["observed_order"] = r.observed_order;
    j["uncertainty"] = r.uncertainty;
    for (const auto& row : r.table) {
        json rj;
        rj["h"] = row.h;
        rj["vertices"] = row.vertices;
        rj["lambda"] = row.lambda;
        j["table"].push_back(rj);
    }
    return j;
}

json config_echo(const ExperimentConfig& cfg) {
    json j;
    j["dimension"] = cfg.dimension;
    j["cone"]["family"] = cfg.cone.family;
    j["cone"]["alpha"] = cfg.cone.alpha;
    j["cone"]["delta"] = cfg.cone.delta;
    j["cone"]["k"] = cfg.cone.k;
    j["profile"]["family"] = cfg.profile.family;
    j["profile"]["R"] = cfg.profile.R;
    j["profile"]["eps"] = cfg.profile.eps;
    j["profile"]["k"] = cfg.profile.k;
    j["quadrature"] = {{"n_phi", cfg.n_phi}, {"n_s", cfg.n_s}, {"n_b", cfg.n_b},
                       {"levels", cfg.levels}};
    j["seed"] = cfg.seed;
    return j;
}

json surface_audit_json(const FreeBoundarySurface& surface) {
    json j;
    j["orthogonality_residual"] = surface.orthogonality_residual();
    j["min_support"] = surface.min_support();
    j["starshaped"] = surface.min_support() > 0.0;
    const auto probe = surface.cone().convexity_probe();
    j["cone_convex"] = probe.convex;
    j["cone_min_II_eigenvalue"] = probe.min_eigenvalue;
    j["cone_strictly_in_half_space"] = surface.cone().domain().strictly_in_half_space();
    return j;
}

void write_json(const std::filesystem::path& file, const json& j, ResultBundle& bundle) {
    write_text_file(file, j.dump(2) + "\n");
    bundle.files.push_back(file);
}

}  // namespace

ResultBundle run_verify(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    ResultBundle bundle;
    const auto& th = cfg.thresholds;

    auto cone = cfg.make_cone();
    auto surface = build_polar_graph(cone, cfg.make_profile(*cone));
    const int N = cone->ambient_dim();
    const auto rules = make_rule_levels(*cone, cfg.n_phi, cfg.n_s, cfg.n_b, cfg.levels);

    json out;
    out["config"] = config_echo(cfg);
    out["surface"] = surface_audit_json(*surface);

    CsvTable csv;
    csv.header = {"level", "n_phi", "n_s", "n_b", "name", "lhs", "rhs", "residual"};

    std::vector<IdentityReport> finest;
    for (const auto& rule : rules) {
        std::vector<IdentityReport> reps;
        reps.push_back(mink1_report(*surface, rule, cfg.threads));
        if (N >= 3) reps.push_back(mink2_report(*surface, rule, cfg.threads));
        reps.push_back(divergence_theorem_check_F1(*surface, rule, cfg.threads));
        reps.push_back(divergence_theorem_check_F2(*surface, rule, cfg.threads));
        json level_json;
        for (const auto& r : reps) {
            csv.add_row({std::to_string(rule.level), std::to_string(rule.n_phi),
                         std::to_string(rule.n_s), std::to_string(rule.n_b), r.name,
                         csv_number(r.lhs), csv_number(r.rhs), csv_number(r.residual)});
            level_json[r.name] = json_of(r);
        }
        out["levels"].push_back(level_json);
        finest = reps;
    }

    const auto& finest_rule = rules.back();
    const auto pw = pointwise_identity_suite(*surface, 256, 256, cfg.seed);
    out["pointwise"] = {{"div_f1_max", pw.div_f1_max},
                        {"div_f2_max", pw.div_f2_max},
                        {"boundary_flux_max", pw.boundary_flux_max},
                        {"interior_nodes", pw.interior_nodes},
                        {"boundary_nodes", pw.boundary_nodes}};
    const auto flow = flow_expansion_check(surface, finest_rule, cfg.flow_t_step, cfg.threads);
    out["flow"] = {{"slope_lhs", flow.slope_lhs},
                   {"slope_rhs", flow.slope_rhs},
                   {"slope_abs_error", flow.slope_abs_error},
                   {"slope_rel_error", flow.slope_rel_error},
                   {"claim_abs_error", flow.claim_abs_error},
                   {"claim_rel_error", flow.claim_rel_error},
                   {"t_step", flow.t_step}};
    const auto rig = rigidity_report(*surface, finest_rule, cfg.threads);
    out["rigidity"] = json_of(rig);

    // Threshold checks on the finest level.
    const bool is_sector = cfg.profile.family == "constant";
    const bool is_orth = surface->orthogonal(th.orthogonality);
    auto find = [&](const std::string& name) -> const IdentityReport& {
        for (const auto& r : finest)
            if (r.name == name) return r;
        throw Error("missing report " + name);
    };

    if (cfg.suite_enabled("divergence")) {
        bundle.add_check("divergence_F1_residual", std::abs(find("divergence_F1").residual),
                         th.divergence_residual);
        if (surface->profile().pole_smooth())
            bundle.add_check("divergence_F2_residual", std::abs(find("divergence_F2").residual),
                             th.divergence_residual);
        else
            out["divergence_F2_check_skipped"] =
                "F2 is unbounded at the cone tip for pole-nonsmooth profiles";
    }
    if (cfg.suite_enabled("mink1") || cfg.suite_enabled("mink1-strict")) {
        const auto& m1 = find("mink1");
        if (cfg.suite_enabled("mink1-strict") && !is_orth) {
            char msg[160];
            std::snprintf(msg, sizeof(msg),
                          "surface is not orthogonal: orthogonality residual %.3e > %.1e",
                          surface->orthogonality_residual(), th.orthogonality);
            bundle.add_check("mink1_strict_orthogonality", surface->orthogonality_residual(),
                             th.orthogonality, msg);
        }
        if (is_sector)
            bundle.add_check("mink1_residual_sector", std::abs(m1.residual), th.mink1_sector);
        else if (is_orth)
            bundle.add_check("mink1_residual", std::abs(m1.residual), th.mink1_orthogonal);
        else
            bundle.add_check("mink1_negative_control",
                             std::abs(m1.residual - m1.extras.at("boundary_flux")),
                             th.divergence_residual,
                             "residual vs boundary term on a non-orthogonal surface");
    }
    if (cfg.suite_enabled("mink2")) {
        if (N >= 3 && is_orth) {
            const auto& m2 = find("mink2");
            bundle.add_check("mink2_residual", std::abs(m2.residual), th.mink2_residual);
            bundle.add_check("mink2_boundary_forms_rel", m2.extras.at("forms_rel_gap"),
                             th.boundary_forms_rel);
        } else if (N >= 3) {
            out["mink2_checks_skipped"] = "surface does not meet the cone orthogonally";
        } else {
            bundle.add_check("mink2_boundary_term_n2",
                             std::abs(mink2_boundary_term(*surface, finest_rule, true)), 0.0,
                             "exactly zero for wedge cones");
        }
    }
    if (cfg.suite_enabled("pointwise")) {
        bundle.add_check("pointwise_div_F1", pw.div_f1_max, th.pointwise);
        bundle.add_check("pointwise_div_F2", pw.div_f2_max, th.pointwise);
        bundle.add_check("pointwise_boundary_flux", pw.boundary_flux_max, th.pointwise);
    }
    if (cfg.suite_enabled("flow")) {
        if (is_orth) {
            if (std::abs(flow.slope_rhs) > 1e-10)
                bundle.add_check("flow_slope_rel_error", flow.slope_rel_error, th.flow_slope_rel);
            else
                bundle.add_check("flow_slope_abs_error", flow.slope_abs_error, 1e-8);
            if (flow.claim_scale > 1e-10)
                bundle.add_check("flow_claim_rel_error", flow.claim_rel_error, th.flow_claim_rel);
            else
                bundle.add_check("flow_claim_abs_error", flow.claim_abs_error, 1e-8);
        } else {
            out["flow_checks_skipped"] = "surface does not meet the cone orthogonally";
        }
    }
    if (cfg.suite_enabled("rigidity"))
        bundle.add_check("rigidity_chain_identity", rig.chain_identity_error, th.chain_identity);

    json checks_json;
    for (const auto& c : bundle.checks)
        checks_json.push_back({{"name", c.name},
                               {"value", c.value},
                               {"threshold", c.threshold},
                               {"pass", c.pass},
                               {"detail", c.detail}});
    out["checks"] = checks_json;
    out["pass"] = bundle.pass;

    write_json(out_dir / "verify.json", out, bundle);
    csv.write(out_dir / "identities.csv");
    bundle.files.push_back(out_dir / "identities.csv");

    if (cfg.plots && rules.size() >= 2) {
        std::vector<double> xs, ys;
        for (std::size_t l = 0; l < rules.size(); ++l) {
            xs.push_back(rules[l].n_phi);
            double res = 0.0;
            const auto& lvl = out["levels"][l];
            res = std::abs(lvl.contains("mink2") ? lvl["mink2"]["residual"].get<double>()
                                                 : lvl["mink1"]["residual"].get<double>());
            ys.push_back(std::max(res, 1e-17));
        }
        write_svg_line_plot(out_dir / "residuals.svg", "identity residual vs resolution",
                            "n_phi", "|residual|", xs, ys, true);
        bundle.files.push_back(out_dir / "residuals.svg");
    }
    return bundle;
}

namespace {

SpectralResult spectral_study_for(const ExperimentConfig& cfg, const FreeBoundarySurface& surface) {
    std::vector<SurfaceMesh> meshes;
    for (int n_r : cfg.mesh_levels) meshes.push_back(build_polar_mesh(surface.cone(), n_r));
    return lambda1_study(surface.chart(), meshes);
}

void write_spectral_outputs(const SpectralResult& spec, const std::filesystem::path& out_dir,
                            const ExperimentConfig& cfg, ResultBundle& bundle) {
    json out;
    out["config"] = config_echo(cfg);
    out["spectral"] = json_of(spec);
    write_json(out_dir / "spectral.json", out, bundle);

    CsvTable csv;
    csv.header = {"h", "vertices", "lambda1"};
    for (const auto& row : spec.table)
        csv.add_row({csv_number(row.h), std::to_string(row.vertices), csv_number(row.lambda)});
    csv.write(out_dir / "spectral.csv");
    bundle.files.push_back(out_dir / "spectral.csv");
}

}  // namespace

ResultBundle run_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    ResultBundle bundle;
    if (cfg.dimension != 3) throw ConfigError("spectrum requires dimension 3 (FEM meshes)");

    auto cone = cfg.make_cone();
    auto surface = build_polar_graph(cone, cfg.make_profile(*cone));
    const SpectralResult spec = spectral_study_for(cfg, *surface);

    bundle.add_check("lambda1_positive", spec.lambda1 > 0.0 ? 0.0 : 1.0, 0.5);
    bundle.add_check("eigenfunction_mean_zero", spec.constant_orthogonality, 1e-10);
    write_spectral_outputs(spec, out_dir, cfg, bundle);
    return bundle;
}

ResultBundle run_stability(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    ResultBundle bundle;
    if (cfg.dimension != 3) throw ConfigError("stability requires dimension 3 (FEM meshes)");
    const auto& th = cfg.thresholds;

    auto cone = cfg.make_cone();
    auto surface = build_polar_graph(cone, cfg.make_profile(*cone));
    const SpectralResult spec = spectral_study_for(cfg, *surface);
    const auto rule = make_rule(*cone, cfg.n_phi, cfg.n_s, cfg.n_b);
    const StabilityReport rep =
        stability_report(*surface, rule, spec.lambda1, spec.uncertainty, th.orthogonality,
                         cfg.threads);

    // Reilly averaging and frame-energy identities.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    VectorXd wrand(3);
    for (int a = 0; a < 3; ++a) wrand[a] = dist(rng);
    const double reilly_zero = reilly_average_check(VectorXd::Zero(3));
    const double reilly_e1 = reilly_average_check(VectorXd::Unit(3, 0));
    const double reilly_rand = reilly_average_check(wrand);
    const double reilly_max = std::max({reilly_zero, reilly_e1, reilly_rand});

    double frame_max = 0.0;
    json frame_json;
    for (const double c : {0.0, rep.H_bar, 1.0}) {
        const auto fr = frame_energy_check(*surface, c, 64, cfg.seed);
        frame_max = std::max(frame_max, fr.max_error);
        frame_json.push_back({{"c", c},
                              {"max_error", fr.max_error},
                              {"cmc_form_error", fr.cmc_form_error},
                              {"nodes", fr.nodes}});
    }

    bundle.add_check("eigenfunction_mean_zero", spec.constant_orthogonality, 1e-10);
    bundle.add_check("volume_preservation", std::abs(rep.u_bar_integral), 1e-8);
    bundle.add_check("stability_chain_error", rep.chain_error, th.chain_identity);
    bundle.add_check("reilly_average", reilly_max, th.reilly);
    bundle.add_check("frame_energy", frame_max, th.frame_energy);

    json out;
    out["config"] = config_echo(cfg);
    out["surface"] = surface_audit_json(*surface);
    out["spectral"] = json_of(spec);
    out["stability"] = json_of(rep);
    out["reilly"] = {{"zero", reilly_zero}, {"e1", reilly_e1}, {"random", reilly_rand}};
    out["frame_energy"] = frame_json;
    json checks_json;
    for (const auto& c : bundle.checks)
        checks_json.push_back({{"name", c.name},
                               {"value", c.value},
                               {"threshold", c.threshold},
                               {"pass", c.pass}});
    out["checks"] = checks_json;
    out["pass"] = bundle.pass;
    write_json(out_dir / "stability.json", out, bundle);

    CsvTable csv;
    csv.header = {"H_bar", "lambda1", "rel_lhs", "rel_rhs", "margin", "margin_low",
                  "margin_high", "Q_form", "label"};
    csv.add_row({csv_number(rep.H_bar), csv_number(rep.lambda1), csv_number(rep.rel_lhs),
                 csv_number(rep.rel_rhs), csv_number(rep.margin), csv_number(rep.margin_low),
                 csv_number(rep.margin_high), csv_number(rep.Q_form), rep.label});
    csv.write(out_dir / "stability.csv");
    bundle.files.push_back(out_dir / "stability.csv");
    return bundle;
}

ResultBundle run_sweep(const ExperimentConfig& cfg, const std::string& axis_arg,
                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    ResultBundle bundle;

    const std::string axis = axis_arg.empty() ? cfg.sweep.axis : axis_arg;
    if (axis != "eps" && axis != "alpha" && axis != "delta")
        throw ConfigError("sweep axis must be eps, alpha or delta");
    if (cfg.dimension != 3) throw ConfigError("sweep requires dimension 3");

    std::vector<double> values = cfg.sweep.values;
    if (!cfg.sweep.values_given) {
        if (axis == "eps") values = {0.0, 0.025, 0.05, 0.1};
        else if (axis == "alpha") values = {1.2, 1.35, 1.5, M_PI / 2.0, 1.7, 1.85, 2.0};
        else values = {0.001, 0.01, 0.1};
    }

    CsvTable csv;
    csv.header = {"axis", "value", "mink2_lhs", "mink2_rhs", "correction_magnitude",
                  "mink2_residual", "sign_condition", "umbilicity_defect_integral",
                  "umbilicity_defect_pointwise", "cmc_deviation", "orthogonality_residual",
                  "cone_convex"};

    json rows_json;
    std::vector<double> xs, ys;
    for (const double v : values) {
        const double alpha = (axis == "alpha") ? v : cfg.cone.alpha;
        const double delta = (axis == "delta") ? v : cfg.cone.delta;
        const double eps = (axis == "eps") ? v : cfg.profile.eps;

        auto cone = cfg.make_cone(alpha, delta);
        auto surface = build_polar_graph(cone, cfg.make_profile(*cone, eps));
        const auto rule = make_rule(*cone, cfg.n_phi, cfg.n_s, cfg.n_b);

        const auto m2 = mink2_report(*surface, rule, cfg.threads);
        const auto rig = rigidity_report(*surface, rule, cfg.threads);
        const auto probe = cone->convexity_probe();

        csv.add_row({axis, csv_number(v), csv_number(m2.lhs), csv_number(m2.rhs),
                     csv_number(std::abs(m2.rhs)), csv_number(m2.residual),
                     csv_number(rig.sign_condition), csv_number(rig.umbilicity_defect_integral),
                     csv_number(rig.umbilicity_defect_pointwise), csv_number(rig.cmc_deviation),
                     csv_number(surface->orthogonality_residual()),
                     probe.convex ? "1" : "0"});
        json row;
        row["value"] = v;
        row["mink2"] = json_of(m2);
        row["rigidity"] = json_of(rig);
        row["cone_convex"] = probe.convex;
        rows_json.push_back(row);

        xs.push_back(v);
        ys.push_back(std::abs(m2.rhs));
    }

    csv.write(out_dir / "sweep.csv");
    bundle.files.push_back(out_dir / "sweep.csv");
    json out;
    out["config"] = config_echo(cfg);
    out["axis"] = axis;
    out["rows"] = values.empty() ? json::array() : rows_json;
    write_json(out_dir / "sweep.json", out, bundle);

    if (cfg.plots && !values.empty()) {
        write_svg_line_plot(out_dir / "sweep.svg", "Minkowski correction magnitude vs " + axis,
                            axis, "|rhs|", xs, ys, false);
        bundle.files.push_back(out_dir / "sweep.svg");
    }
    return bundle;
}

}  // namespace conegeo
