#pragma once

// Test-only oracles, independent of the jet differentiation engine: finite
// differences built from chart positions alone, closed forms for caps and
// circular cones, and a shooting solver for cap Neumann eigenvalues.

#include <conegeo/geometry.hpp>

namespace conegeo::oracles {

/// ChartJet from central finite differences of chart positions (step h).
ChartJet fd_chart_jet(const Chart& chart, const VectorXd& u, double h);

/// Mean curvature from finite differences of finite-difference normals;
/// never touches jet arithmetic.
double fd_mean_curvature(const Chart& chart, const VectorXd& u, const Orientation& orient,
                         double h);

inline double cap_area(double alpha, double R) { return 2.0 * M_PI * (1.0 - std::cos(alpha)) * R * R; }
inline double cap_boundary_length(double alpha, double R) { return 2.0 * M_PI * R * std::sin(alpha); }

/// Exterior conormal of the circular cap cone at azimuth phi.
VectorXd cap_cone_conormal(double alpha, double phi);

/// Nonzero principal curvature of the circular cone of half-angle alpha at
/// distance t from the vertex (exterior normal convention).
inline double circular_cone_curvature(double alpha, double t) { return 1.0 / (std::tan(alpha) * t); }

/// First nontrivial Neumann eigenvalue of the Laplace-Beltrami operator on
/// the unit spherical cap of angle alpha, by shooting on the Legendre ODE
/// over azimuthal orders m in {0, 1, 2}.
double cap_neumann_lambda1(double alpha);

}  // namespace conegeo::oracles
