#pragma once

#include "conegeo/config.hpp"

namespace conegeo {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

struct ResultBundle {
    std::vector<std::filesystem::path> files;
    std::vector<CheckResult> checks;
    bool pass = true;

    void add_check(std::string name, double value, double threshold, std::string detail = "");
    std::string summary() const;
};

/// Identity suites (Minkowski formulas, divergence theorem, pointwise
/// identities, flow expansion, rigidity chain) across refinement levels;
/// writes verify.json + identities.csv (+ residuals.svg with plots on).
ResultBundle run_verify(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Neumann eigenvalue refinement study; writes spectral.json + spectral.csv.
ResultBundle run_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Spectral study plus the stability report with interval-propagated
/// eigenvalue uncertainty, Reilly averaging and frame-energy checks;
/// writes stability.json + stability.csv.
ResultBundle run_stability(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// One row per sweep value of the Minkowski correction term, sign condition
/// and umbilicity defects; writes sweep.csv + sweep.json (+ sweep.svg).
ResultBundle run_sweep(const ExperimentConfig& cfg, const std::string& axis,
                       const std::filesystem::path& out_dir);

/// Output directory precedence: CLI flag, config out_dir, CONEGEO_OUT_DIR,
/// then "./conegeo_out".
std::filesystem::path resolve_out_dir(const std::string& cli_out, const ExperimentConfig& cfg);

}  // namespace conegeo
