#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "conegeo/errors.hpp"
#include "conegeo/jet.hpp"

namespace conegeo {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

/// Twice-differentiable parametrization of an (N-1)-manifold patch.
///
/// `eval` receives the parameter point as jets and writes the N ambient
/// coordinates as jets; closed-form charts simply evaluate their formula in
/// jet arithmetic and therefore produce exact derivatives to `max_jet_order`.
/// Derived charts (normal offsets, point-evaluator fallbacks) expand around
/// the evaluation point and require the inputs to be seed variables.
class Chart {
public:
    virtual ~Chart() = default;

    virtual int ambient_dim() const = 0;  // N
    virtual int param_dim() const = 0;    // N - 1 (1 or 2)
    /// Highest total derivative order eval() can deliver (3 for closed-form
    /// charts, one less per normal-offset layer).
    virtual int max_jet_order() const { return Jet::kMaxOrder; }

    virtual bool in_domain(const VectorXd& u) const { (void)u; return true; }

    virtual void eval(std::span<const Jet> u, std::span<Jet> out) const = 0;

    /// Evaluate at a parameter point with seed jets of the given order.
    JetVec eval_at(const VectorXd& u, int order) const;

    /// Position only.
    VectorXd position(const VectorXd& u) const;
};

/// First/second-derivative record of a chart at one parameter point.
/// ddx is stored symmetrically by construction.
struct ChartJet {
    VectorXd u;                        // parameter point, size N-1
    VectorXd x;                        // position, size N
    MatrixXd dx;                       // N x (N-1) first derivatives
    std::vector<std::vector<VectorXd>> ddx;  // symmetric (N-1)x(N-1) of R^N

    int ambient_dim() const { return static_cast<int>(x.size()); }
    int param_dim() const { return static_cast<int>(u.size()); }
};

/// Builds the first/second derivative record at u; throws
/// ChartDegeneracyError when the differential is rank deficient and
/// DomainError for parameters outside the chart domain.
ChartJet chart_jet(const Chart& chart, const VectorXd& u);

/// Extracts a ChartJet from an already-evaluated jet vector (order >= 2).
ChartJet chart_jet_from(const VectorXd& u, const JetVec& x, int ambient_dim, int param_dim);

/// Chart defined only by a position evaluator: derivatives are recovered by
/// central finite differences with Richardson extrapolation (steps h, h/2).
/// Jets are valid to order 2.
class PointEvaluatorChart : public Chart {
public:
    PointEvaluatorChart(int ambient_dim, int param_dim,
                        std::function<VectorXd(const VectorXd&)> position,
                        double step = 1e-4);

    int ambient_dim() const override { return n_; }
    int param_dim() const override { return m_; }
    int max_jet_order() const override { return 2; }
    void eval(std::span<const Jet> u, std::span<Jet> out) const override;

private:
    int n_, m_;
    std::function<VectorXd(const VectorXd&)> f_;
    double h_;
};

/// Affine planar patch u -> origin + u1*a + u2*b (test and FEM reference
/// geometry; ddx vanishes identically).
class PlanarPatchChart : public Chart {
public:
    PlanarPatchChart(VectorXd origin, VectorXd a, VectorXd b);

    int ambient_dim() const override { return static_cast<int>(origin_.size()); }
    int param_dim() const override { return 2; }
    void eval(std::span<const Jet> u, std::span<Jet> out) const override;

private:
    VectorXd origin_, a_, b_;
};

/// Geodesic-polar (exponential-map) chart of the radius-R origin-centered
/// sphere about the north pole: u in R^2 |-> R * (u1 f(q), u2 f(q), g(q)),
/// q = |u|^2, f = sin(sqrt q)/sqrt q, g = cos(sqrt q). Smooth through u = 0.
class SphereExponentialChart : public Chart {
public:
    explicit SphereExponentialChart(double radius) : radius_(radius) {}

    int ambient_dim() const override { return 3; }
    int param_dim() const override { return 2; }
    bool in_domain(const VectorXd& u) const override { return u.squaredNorm() < M_PI * M_PI; }
    void eval(std::span<const Jet> u, std::span<Jet> out) const override;

private:
    double radius_;
};

}  // namespace conegeo
