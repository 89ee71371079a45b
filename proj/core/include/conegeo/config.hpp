#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "conegeo/surface.hpp"

namespace conegeo {

/// Residual thresholds enforced by the runners; defaults match the
/// project-wide acceptance tolerances.
struct Thresholds {
    double divergence_residual = 1e-7;
    double mink1_sector = 1e-12;
    double mink1_orthogonal = 1e-8;
    double mink2_residual = 1e-6;
    double boundary_forms_rel = 1e-9;
    double pointwise = 1e-7;
    double flow_slope_rel = 1e-3;
    double flow_claim_rel = 1e-4;
    double orthogonality = 1e-8;
    double chain_identity = 1e-12;
    double reilly = 1e-12;
    double frame_energy = 1e-7;
};

struct ConeSpec {
    std::string family;  // "cap" | "perturbed_cap" | "wedge"
    double alpha = 1.2;  // cap angle; wedge: full opening
    double delta = 0.0;
    int k = 0;
};

struct ProfileSpec {
    std::string family;  // "constant" | "axisym" | "bump" | "linear_violation"
    double R = 1.0;
    double eps = 0.0;
    int k = 2;
};

struct SweepSpec {
    std::string axis;  // "eps" | "alpha" | "delta"
    std::vector<double> values;
    bool values_given = false;  // explicit empty list means an empty sweep
};

struct ExperimentConfig {
    int dimension = 3;
    ConeSpec cone;
    ProfileSpec profile;
    int n_phi = 256, n_s = 64, n_b = 512;
    int levels = 1;
    std::vector<int> mesh_levels = {8, 16, 32};
    std::vector<std::string> suites;  // empty = all
    std::uint64_t seed = 1;
    std::string out_dir;
    bool plots = false;
    double flow_t_step = 1e-3;
    SweepSpec sweep;
    Thresholds thresholds;
    int threads = 1;

    bool suite_enabled(const std::string& name) const;

    std::shared_ptr<const ConeGeometry> make_cone() const;
    std::shared_ptr<const ConeGeometry> make_cone(double alpha_override,
                                                  double delta_override) const;
    RadialProfile make_profile(const ConeGeometry& cone) const;
    RadialProfile make_profile(const ConeGeometry& cone, double eps_override) const;
};

/// Parses and validates a config document; unknown keys are rejected with
/// the offending key named. The JSON schema ships in docs/config.schema.json.
ExperimentConfig parse_config_json(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& file);

}  // namespace conegeo
