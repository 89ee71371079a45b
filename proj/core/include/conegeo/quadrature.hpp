#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "conegeo/surface.hpp"

namespace conegeo {

/// Compensated (Neumaier) accumulator; summation order is fixed by the
/// callers, so results are reproducible bit-for-bit.
struct NeumaierSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double total() const { return s + c; }
};

/// Gauss-Legendre nodes/weights on (0, 1).
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Interior and boundary quadrature in parameter space. For N = 3 the
/// interior rule is trapezoid in the periodic angle (n_phi nodes) tensored
/// with Gauss-Legendre in the scaled radius xi in (0,1) (n_s nodes),
/// s = xi b(phi); the radial Jacobian xi b(phi)^2 is folded into the
/// weights, so integrate() only multiplies by the surface area weight.
/// For N = 2 the interior rule is Gauss-Legendre across the arc and the
/// boundary "integral" is the two-endpoint sum.
struct QuadratureRule {
    struct InteriorNode {
        VectorXd u;
        double w = 0.0;
    };
    struct BoundaryNode {
        double phi = 0.0;  // boundary parameter; side index for N = 2
        double w = 0.0;
    };

    int n_phi = 0, n_s = 0, n_b = 0;
    int level = 0;
    std::vector<InteriorNode> interior;
    std::vector<BoundaryNode> boundary;
};

QuadratureRule make_rule(const ConeGeometry& cone, int n_phi, int n_s, int n_b, int level = 0);

/// Rules at `levels` refinement levels, doubling every resolution.
std::vector<QuadratureRule> make_rule_levels(const ConeGeometry& cone, int n_phi, int n_s, int n_b,
                                             int levels);

/// sum_k w_k f(P_k) area_weight(P_k); throws on non-finite integrand values.
double integrate_surface(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                         const std::function<double(const CurvaturePoint&)>& integrand,
                         int threads = 1);

/// Several integrands over one sweep of the nodes (shared jet evaluation).
std::vector<double> integrate_surface_multi(
    const FreeBoundarySurface& surface, const QuadratureRule& rule,
    std::span<const std::function<double(const SurfaceJets&)>> integrands, int threads = 1);

double integrate_boundary(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                          const std::function<double(const BoundaryData&)>& integrand,
                          int threads = 1);

std::vector<double> integrate_boundary_multi(
    const FreeBoundarySurface& surface, const QuadratureRule& rule,
    std::span<const std::function<double(const BoundaryData&)>> integrands, int threads = 1);

/// Refinement study of a scalar quantity.
struct ConvergenceTable {
    struct Row {
        int level = 0;
        int n_phi = 0, n_s = 0, n_b = 0;
        double value = 0.0;
        double delta_from_finest = 0.0;
        std::optional<double> order;  // log2 ratio of successive deltas
    };
    std::vector<Row> rows;
};

ConvergenceTable convergence_table(const std::function<double(const QuadratureRule&)>& quantity,
                                   std::span<const QuadratureRule> levels);

}  // namespace conegeo
