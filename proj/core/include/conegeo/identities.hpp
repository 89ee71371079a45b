#pragma once

#include <map>
#include <string>

#include "conegeo/quadrature.hpp"

namespace conegeo {

/// Tangential part of the radial field, F1 = x - <x,nu> nu, with parameter
/// derivatives (chart order >= 2).
JetVec field_F1(const SurfaceJets& P);

/// F2 = (N-1) H F1 - grad_{F1} nu; differentiating it needs order-3 charts.
JetVec field_F2(const SurfaceJets& P);

/// Both-sides record of one integral identity at one resolution.
struct IdentityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs exactly as computed
    int n_phi = 0, n_s = 0, n_b = 0;
    std::string table_ref;
    std::map<std::string, double> extras;
};

/// First Minkowski formula: lhs = int_Gamma (1 - H <x,nu>), rhs = 0.
/// extras: "boundary_flux" = int_dGamma <F1, conormal> / (N-1), the value the
/// residual converges to when the surface is not orthogonal, and
/// "orthogonality_residual".
IdentityReport mink1_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                            int threads = 1);

/// Boundary correction integral int_dGamma II^Sigma(v, v) <x,nu> with
/// v = nu_T (use_nu_T) or v = nu; the two agree by radial flatness.
double mink2_boundary_term(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                           bool use_nu_T, int threads = 1);

/// Second Minkowski identity (N >= 3):
///   lhs = int_Gamma (H - sigma2 <x,nu>),
///   rhs = -1/((N-1)(N-2)) int_dGamma II^Sigma(nu_T, nu_T) <x,nu>.
/// extras: "rhs_nu_form" (same with nu) and "forms_rel_gap".
IdentityReport mink2_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                            int threads = 1);

/// Generalized divergence theorem for a tangent field:
///   int_Gamma div_Gamma(F) = int_dGamma <F, conormal>,
/// with the intrinsic conormal; valid with or without orthogonality.
IdentityReport divergence_theorem_check(const FreeBoundarySurface& surface,
                                        const QuadratureRule& rule,
                                        const std::function<JetVec(const SurfaceJets&)>& field,
                                        const std::string& name = "divergence", int threads = 1);
IdentityReport divergence_theorem_check_F1(const FreeBoundarySurface& surface,
                                           const QuadratureRule& rule, int threads = 1);
IdentityReport divergence_theorem_check_F2(const FreeBoundarySurface& surface,
                                           const QuadratureRule& rule, int threads = 1);

/// Max pointwise errors of div F1 = (N-1)(1 - H<x,nu>),
/// div F2 = (N-1)(N-2)(H - sigma2 <x,nu>), and the boundary flux identity
/// <F2, n> = -<x,nu> II^Sigma(nu,nu), over randomized node samples.
struct PointwiseIdentityErrors {
    double div_f1_max = 0.0;
    double div_f2_max = 0.0;
    double boundary_flux_max = 0.0;
    int interior_nodes = 0;
    int boundary_nodes = 0;
};
PointwiseIdentityErrors pointwise_identity_suite(const FreeBoundarySurface& surface,
                                                 int interior_nodes, int boundary_nodes,
                                                 uint64_t seed);

/// Normal-flow expansion check: the t-derivative of
/// (N-1) int_{Gamma_t} (1 - H_t <x_t, nu_t>) at t = 0 against
/// (N-1)(N-2) int_Gamma (H - sigma2 <x,nu>), plus the conormal-velocity
/// identity <x, d/dt n^t|_0> = -<x,nu> II^Sigma(nu,nu) along the boundary.
/// Derivatives are centered differences Richardson-refined at t_step / 2.
struct FlowExpansionResult {
    double slope_lhs = 0.0;
    double slope_rhs = 0.0;
    double slope_abs_error = 0.0;
    double slope_rel_error = 0.0;  // relative to |slope_rhs| when nonzero
    double claim_abs_error = 0.0;  // max over boundary nodes
    double claim_rel_error = 0.0;  // relative to the largest claim magnitude
    double claim_scale = 0.0;      // max |<x,nu> II(nu,nu)| over boundary nodes
    double t_step = 0.0;
};
FlowExpansionResult flow_expansion_check(std::shared_ptr<const FreeBoundarySurface> surface,
                                         const QuadratureRule& rule, double t_step = 1e-3,
                                         int threads = 1);

/// Rigidity diagnostics: the constant-H candidate, CMC and umbilicity
/// defects, the sign condition of the gluing assumption, and the algebraic
/// chain identity connecting the two Minkowski formulas.
struct RigidityReport {
    double H_bar = 0.0;              // |Gamma| / int <x,nu>
    double cmc_deviation = 0.0;      // max |H - H_bar|
    double sign_condition = 0.0;     // int_dGamma II^Sigma(nu_T,nu_T) <x,nu>
    double umbilicity_defect_integral = 0.0;   // int (H_bar^2 - sigma2) <x,nu>
    double umbilicity_defect_pointwise = 0.0;  // max ||S - H_bar Id||_F
    double min_support = 0.0;        // starshapedness: min <x,nu>
    bool starshaped = false;
    double chain_identity_error = 0.0;
    double area = 0.0;
};
RigidityReport rigidity_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                               int threads = 1);

}  // namespace conegeo
