#pragma once

#include <memory>
#include <optional>
#include <string>

#include "conegeo/cone.hpp"

namespace conegeo {

/// Positive radial scalar field rho over the parameter domain of omega,
/// with exact derivatives via jet evaluation. For N = 3 the parameters are
/// the planar exponential-map coordinates of the cap; for N = 2 the single
/// parameter is the angle offset from the arc midpoint.
///
/// Built-in families over a cap of angle alpha:
///   constant:          rho = R                          (spherical sector)
///   axisym:            rho = R (1 + eps cos(pi s / alpha)), s = |u|
///   bump:              rho = R (1 + eps chi(s) cos(k phi)), chi a smooth
///                      0->1 transition supported in s in [0.3 alpha, alpha]
///                      with chi'(alpha) = 0
///   linear_violation:  rho = R (1 + eps s / alpha)       (breaks Neumann)
/// The first three keep the conormal derivative of rho zero on the cap
/// boundary, which is what makes the graph meet the cone orthogonally; this
/// is verified numerically at construction, never assumed.
class RadialProfile {
public:
    enum class Family { constant, axisym, bump, linear_violation, custom };

    RadialProfile(Family family, std::function<Jet(std::span<const Jet>)> rho,
                  double R, double eps = 0.0, int k = 0)
        : family_(family), rho_(std::move(rho)), R_(R), eps_(eps), k_(k) {}

    Jet rho(std::span<const Jet> u) const { return rho_(u); }
    Family family() const { return family_; }
    double R() const { return R_; }
    double eps() const { return eps_; }
    int k() const { return k_; }
    std::string family_name() const;
    /// False when rho is only Lipschitz at the pole (linear_violation):
    /// curvature blows up at the cone tip there and fields that carry a
    /// factor of H are no longer C^1 up to the puncture.
    bool pole_smooth() const { return family_ != Family::linear_violation; }

    static RadialProfile constant(double R);
    static RadialProfile axisym(int dimension, double R, double eps, double alpha);
    static RadialProfile bump(int dimension, double R, double eps, int k, double alpha);
    static RadialProfile linear_violation(int dimension, double R, double eps, double alpha);

private:
    Family family_;
    std::function<Jet(std::span<const Jet>)> rho_;
    double R_, eps_;
    int k_;
};

/// Boundary record of a surface at one boundary node.
struct BoundaryData {
    double phi = 0.0;      // boundary parameter (N = 3) or side index (N = 2)
    VectorXd u;            // interior chart parameter of the boundary point
    VectorXd x;            // position
    VectorXd nu;           // surface unit normal
    VectorXd conormal;     // unit, tangent to Gamma, normal to dGamma, outward
    VectorXd nu_T;         // nu - <x,nu> x / |x|^2
    std::optional<VectorXd> cone_normal;  // n, when the point lies on the cone
    double nu_dot_n = 0.0;                // orthogonality defect <nu, n>
    double support = 0.0;                 // <x, nu>
    double length_weight = 1.0;           // |d x_b / d phi| (1 for N = 2)
};

/// A hypersurface in the cone with relative boundary on the lateral cone
/// wall. Immutable after construction; all evaluators are pure.
class FreeBoundarySurface {
public:
    virtual ~FreeBoundarySurface() = default;

    int ambient_dim() const { return cone_->ambient_dim(); }
    const ConeGeometry& cone() const { return *cone_; }
    std::shared_ptr<const ConeGeometry> cone_ptr() const { return cone_; }
    const Chart& chart() const { return *chart_; }
    std::shared_ptr<const Chart> chart_ptr() const { return chart_; }
    const Orientation& orientation() const { return orient_; }

    SurfaceJets jets(const VectorXd& u) const { return SurfaceJets(*chart_, u, orient_); }
    CurvaturePoint point(const VectorXd& u) const { return jets(u).point(); }

    /// Parameter of the boundary point: u_b(phi) = b(phi) e(phi) for N = 3;
    /// for N = 2 phi is the side index (0 or 1) and u_b = -+ half-width.
    VectorXd boundary_param(double phi) const;
    /// d u_b / d phi (zero vector for N = 2).
    VectorXd boundary_param_velocity(double phi) const;

    BoundaryData boundary_data(double phi) const;

    /// max |<nu, n>| over the construction-time boundary audit.
    double orthogonality_residual() const { return ortho_residual_; }
    bool orthogonal(double tol = 1e-8) const { return ortho_residual_ <= tol; }
    /// min <x, nu> over the audit sample (> 0: strictly starshaped).
    double min_support() const { return min_support_; }

protected:
    FreeBoundarySurface(std::shared_ptr<const ConeGeometry> cone,
                        std::shared_ptr<const Chart> chart, Orientation orient)
        : cone_(std::move(cone)), chart_(std::move(chart)), orient_(std::move(orient)) {}

    /// Runs the starshapedness/orthogonality audit; call at the end of
    /// derived constructors. `expect_on_cone` controls whether boundary
    /// points are checked against the lateral wall.
    void audit(bool expect_on_cone);

    std::shared_ptr<const ConeGeometry> cone_;
    std::shared_ptr<const Chart> chart_;
    Orientation orient_;
    bool boundary_on_cone_ = true;
    double ortho_residual_ = 0.0;
    double min_support_ = 0.0;
};

/// Polar graph u -> rho(u) Theta(u) over the cone domain.
class PolarGraphSurface : public FreeBoundarySurface {
public:
    PolarGraphSurface(std::shared_ptr<const ConeGeometry> cone, RadialProfile profile);

    const RadialProfile& profile() const { return profile_; }

private:
    RadialProfile profile_;
};

/// Normal offset Gamma_t = { x + t nu_x }. The chart differentiates the
/// base normal, so its jets are valid one order below the base chart's.
class OffsetSurface : public FreeBoundarySurface {
public:
    OffsetSurface(std::shared_ptr<const FreeBoundarySurface> base, double t);

    double offset() const { return t_; }
    const FreeBoundarySurface& base() const { return *base_; }

private:
    std::shared_ptr<const FreeBoundarySurface> base_;
    double t_;
};

/// Gamma_{omega,R}: constant profile, exactly orthogonal, H = 1/R.
std::shared_ptr<PolarGraphSurface> spherical_sector(std::shared_ptr<const ConeGeometry> cone,
                                                    double R);

std::shared_ptr<PolarGraphSurface> build_polar_graph(std::shared_ptr<const ConeGeometry> cone,
                                                     RadialProfile profile);

/// Offset with focal-distance check (area weight must stay positive over a
/// probe grid); throws FocalDistanceError otherwise.
std::shared_ptr<OffsetSurface> normal_offset(std::shared_ptr<const FreeBoundarySurface> base,
                                             double t);

BoundaryData boundary_data_at(const FreeBoundarySurface& surface, double phi);

}  // namespace conegeo
