#include "conegeo/cone.hpp"

#include <Eigen/Eigenvalues>

namespace conegeo {

SphericalDomainSpec SphericalDomainSpec::cap(double alpha) {
    SphericalDomainSpec s;
    s.dimension = 3;
    s.family = Family::cap;
    s.alpha = alpha;
    s.b_fn = [alpha](const Jet&) { return Jet::constant(alpha); };
    s.validate();
    return s;
}

SphericalDomainSpec SphericalDomainSpec::perturbed_cap(double alpha, double delta, int k) {
    SphericalDomainSpec s;
    s.dimension = 3;
    s.family = Family::perturbed_cap;
    s.alpha = alpha;
    s.delta = delta;
    s.k = k;
    s.b_fn = [alpha, delta, k](const Jet& phi) { return Jet::constant(alpha) + cos(phi * double(k)) * delta; };
    s.validate();
    return s;
}

SphericalDomainSpec SphericalDomainSpec::custom(std::function<Jet(const Jet&)> b) {
    SphericalDomainSpec s;
    s.dimension = 3;
    s.family = Family::custom;
    s.b_fn = std::move(b);
    s.alpha = s.max_b();
    s.validate();
    return s;
}

SphericalDomainSpec SphericalDomainSpec::wedge(double opening, double mid) {
    SphericalDomainSpec s;
    s.dimension = 2;
    s.family = Family::arc;
    s.alpha = opening / 2.0;
    s.mid = mid;
    s.validate();
    return s;
}

double SphericalDomainSpec::b(double phi) const {
    if (dimension == 2) return alpha;
    return b_fn(Jet::constant(phi)).value();
}

double SphericalDomainSpec::max_b() const {
    if (dimension == 2) return alpha;
    double m = 0.0;
    for (int i = 0; i < 720; ++i) m = std::max(m, b(2.0 * M_PI * i / 720.0));
    return m;
}

void SphericalDomainSpec::validate() const {
    if (dimension == 2) {
        if (!(alpha > 0.0) || !(2.0 * alpha < M_PI))
            throw DomainError("wedge opening must lie in (0, pi)");
        return;
    }
    for (int i = 0; i < 720; ++i) {
        const double v = b(2.0 * M_PI * i / 720.0);
        if (!(v > 0.0) || !(v < M_PI))
            throw DomainError("geodesic radius b(phi) must stay in (0, pi)");
    }
}

namespace {

// (t, phi) -> t * gamma(phi), gamma(phi) = exp_pole(b(phi) e(phi)).
class LateralConeChart : public Chart {
public:
    explicit LateralConeChart(SphericalDomainSpec spec) : spec_(std::move(spec)) {}

    int ambient_dim() const override { return 3; }
    int param_dim() const override { return 2; }
    bool in_domain(const VectorXd& u) const override { return u[0] > 0.0; }

    void eval(std::span<const Jet> u, std::span<Jet> out) const override {
        const Jet& t = u[0];
        const Jet& phi = u[1];
        const Jet b = spec_.b_jet(phi);
        const Jet sb = sin(b), cb = cos(b);
        const Jet cphi = cos(phi), sphi = sin(phi);
        out[0] = t * (sb * cphi);
        out[1] = t * (sb * sphi);
        out[2] = t * cb;
    }

private:
    SphericalDomainSpec spec_;
};

// Ray chart for N = 2: t -> t * (cos a, sin a).
class RayChart : public Chart {
public:
    explicit RayChart(double angle) : d_(std::cos(angle), std::sin(angle)) {}

    int ambient_dim() const override { return 2; }
    int param_dim() const override { return 1; }
    bool in_domain(const VectorXd& u) const override { return u[0] > 0.0; }

    void eval(std::span<const Jet> u, std::span<Jet> out) const override {
        out[0] = u[0] * d_.x();
        out[1] = u[0] * d_.y();
    }

private:
    Vector2d d_;
};

// Outward geodesic-radial direction d/ds exp_pole(s e(phi)) at s = b(phi);
// used to orient the cone normal away from omega.
VectorXd outward_geodesic_dir(const SphericalDomainSpec& spec, double phi) {
    const double b = spec.b(phi);
    VectorXd w(3);
    w << std::cos(b) * std::cos(phi), std::cos(b) * std::sin(phi), -std::sin(b);
    return w;
}

}  // namespace

ConeGeometry::ConeGeometry(SphericalDomainSpec spec) : spec_(std::move(spec)) {
    if (spec_.dimension == 3) {
        lateral_[0] = std::make_shared<LateralConeChart>(spec_);
        lateral_[1] = lateral_[0];
    } else {
        lateral_[0] = std::make_shared<RayChart>(spec_.mid - spec_.alpha);
        lateral_[1] = std::make_shared<RayChart>(spec_.mid + spec_.alpha);
    }
}

const Chart& ConeGeometry::lateral_chart(int side) const { return *lateral_[side]; }

VectorXd ConeGeometry::boundary_sphere_point(double phi, int side) const {
    if (spec_.dimension == 2) {
        const double a = spec_.mid + (side == 0 ? -spec_.alpha : spec_.alpha);
        VectorXd g(2);
        g << std::cos(a), std::sin(a);
        return g;
    }
    VectorXd u(2);
    u << 1.0, phi;
    return lateral_[0]->position(u);
}

ConeGeometry::LateralCoords ConeGeometry::locate(const VectorXd& x, double tol) const {
    const double t = x.norm();
    if (t <= 1e-12) throw DomainError("lateral point coincides with the cone vertex");
    const VectorXd dir = x / t;
    if (spec_.dimension == 2) {
        for (int side = 0; side < 2; ++side) {
            const VectorXd g = boundary_sphere_point(0.0, side);
            if ((dir - g).norm() <= tol) return {t, 0.0, side};
        }
        throw DomainError("point is not on a wedge ray");
    }
    const double phi = std::atan2(x[1], x[0]);
    const VectorXd g = boundary_sphere_point(phi);
    if ((dir - g).norm() > tol)
        throw DomainError("point is not on the lateral cone boundary");
    return {t, phi, 0};
}

VectorXd ConeGeometry::normal_at(const VectorXd& x) const {
    const LateralCoords lc = locate(x);
    if (spec_.dimension == 2) {
        // Rotate the ray direction by 90 degrees, outward from the wedge.
        const double a = spec_.mid + (lc.side == 0 ? -spec_.alpha : spec_.alpha);
        VectorXd n(2);
        if (lc.side == 0)
            n << std::sin(a), -std::cos(a);
        else
            n << -std::sin(a), std::cos(a);
        return n;
    }
    VectorXd u(2);
    u << lc.t, lc.phi;
    const ChartJet jet = chart_jet(*lateral_[0], u);
    const CurvaturePoint p = curvature_at(jet, Orientation::align(outward_geodesic_dir(spec_, lc.phi)));
    return p.nu;
}

ConeGeometry::IIValue ConeGeometry::II_at(const VectorXd& x, const VectorXd& v,
                                          const VectorXd& w) const {
    const LateralCoords lc = locate(x);
    IIValue r;
    if (spec_.dimension == 2) {
        // Rays are straight: II^Sigma vanishes identically. Report how far
        // the inputs are from the 1-d tangent line.
        const VectorXd d = boundary_sphere_point(0.0, lc.side);
        r.value = 0.0;
        r.defect_v = (v - d * d.dot(v)).norm();
        r.defect_w = (w - d * d.dot(w)).norm();
        return r;
    }
    VectorXd u(2);
    u << lc.t, lc.phi;
    const ChartJet jet = chart_jet(*lateral_[0], u);
    const Orientation orient = Orientation::align(outward_geodesic_dir(spec_, lc.phi));
    const CurvaturePoint p = curvature_at(jet, orient);

    // Tangency projection: coordinates of v, w in the chart basis.
    const MatrixXd T = jet.dx;
    const Eigen::Matrix2d G = p.g;
    const Eigen::Vector2d av = G.ldlt().solve(T.transpose() * v);
    const Eigen::Vector2d aw = G.ldlt().solve(T.transpose() * w);
    r.defect_v = (v - T * av).norm();
    r.defect_w = (w - T * aw).norm();
    r.value = av.dot(p.ii * aw);
    return r;
}

ConvexityProbe ConeGeometry::convexity_probe(int n_phi_samples) const {
    ConvexityProbe probe;
    probe.min_eigenvalue = std::numeric_limits<double>::infinity();
    const double radii[3] = {0.5, 1.0, 2.0};
    if (spec_.dimension == 2) {
        probe.min_eigenvalue = 0.0;  // rays are flat
        probe.samples = 2 * 3;
        probe.convex = true;
        return probe;
    }
    for (int i = 0; i < n_phi_samples; ++i) {
        const double phi = 2.0 * M_PI * i / n_phi_samples;
        for (const double t : radii) {
            VectorXd u(2);
            u << t, phi;
            const ChartJet jet = chart_jet(*lateral_[0], u);
            const CurvaturePoint p =
                curvature_at(jet, Orientation::align(outward_geodesic_dir(spec_, phi)));
            Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(p.ii, p.g);
            probe.min_eigenvalue = std::min(probe.min_eigenvalue, es.eigenvalues().minCoeff());
            ++probe.samples;
        }
    }
    probe.convex = probe.min_eigenvalue >= -1e-10;
    return probe;
}

}  // namespace conegeo
