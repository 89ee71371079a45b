#pragma once

#include <string>

#include "conegeo/quadrature.hpp"

namespace conegeo {

/// Both sides of the stable-critical-point inequality
///   -int_dGamma II^Sigma(nu_T, nu_T) >= lambda1 int_Gamma |F - F0|^2,
/// F = H_bar x - nu, together with the second-variation value
///   Q(u_bar, u_bar) = -(N-1)(N-2) int (H_bar^2 - sigma2) - int_dGamma II^Sigma(nu, nu)
/// along the volume-preserving variation u_bar = 1 - H_bar <x, nu>.
/// The eigenvalue uncertainty is propagated as an interval.
struct StabilityReport {
    double H_bar = 0.0;
    double cmc_deviation = 0.0;
    std::string label;  // "theorem-applicable" when CMC within tolerance, else "diagnostic"

    double u_bar_integral = 0.0;  // int u_bar (volume preservation)
    double Q_form = 0.0;          // Q(u_bar, u_bar)
    double frame_term = 0.0;      // (N-1)(N-2) int (H_bar^2 - sigma2)
    double eigen_term = 0.0;      // int |F - F0|^2
    VectorXd F0;                  // exact discrete average of F

    double lambda1 = 0.0;
    double lambda1_uncertainty = 0.0;  // relative half-width
    double rel_lhs = 0.0;              // -int_dGamma II^Sigma(nu_T, nu_T)
    double rel_rhs = 0.0;              // lambda1 * eigen_term
    double margin = 0.0;               // rel_lhs - rel_rhs
    double margin_low = 0.0, margin_high = 0.0;

    double flatness_correction = 0.0;  // int II(nu,nu) - int II(nu_T,nu_T)
    double chain_error = 0.0;          // exact rearrangement defect
};

StabilityReport stability_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                                 double lambda1, double lambda1_uncertainty = 0.0,
                                 double cmc_tol = 1e-8, int threads = 1);

/// |average over S^{N-1} of <w, v>^2  -  |w|^2 / N| by spherical quadrature
/// (exact for the degree-2 integrand).
double reilly_average_check(const VectorXd& w, int n_nodes = 32);

/// Max over sampled nodes of
///   | sum_j |grad_{e_j}(c x - nu)|^2 - ((N-1)c^2 - 2c(N-1)H + tr S^2) |,
/// left side by frame differentiation, right side from curvature data.
/// `cmc_form_error` additionally compares against (N-1)(N-2)(c^2 - sigma2),
/// the closed form valid at c = H on CMC surfaces.
struct FrameEnergyResult {
    double max_error = 0.0;
    double cmc_form_error = 0.0;
    int nodes = 0;
};
FrameEnergyResult frame_energy_check(const FreeBoundarySurface& surface, double c, int n_samples,
                                     uint64_t seed);

}  // namespace conegeo
