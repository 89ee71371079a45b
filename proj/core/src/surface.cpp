#include "conegeo/surface.hpp"

#include <cmath>

namespace conegeo {

namespace {

// C^infinity 0 -> 1 transition on [0, 1] with all derivatives vanishing at
// both ends: psi(tau) = f(tau) / (f(tau) + f(1 - tau)), f = exp(-1/tau).
Jet smooth_transition(const Jet& tau) {
    const double t0 = tau.value();
    if (t0 <= 1e-9) return Jet::constant(0.0);
    if (t0 >= 1.0 - 1e-9) return Jet::constant(1.0);
    const Jet f = exp(Jet::constant(-1.0) / tau);
    const Jet g = exp(Jet::constant(-1.0) / (1.0 - tau));
    return f / (f + g);
}

// cos(k phi) at u = s e(phi) via ((u0 + i u1)/s)^k; requires |u| > 0.
Jet cos_k_phi(const Jet& u0, const Jet& u1, const Jet& s, int k) {
    const Jet c = u0 / s, d = u1 / s;
    Jet ck = Jet::constant(1.0), sk = Jet::constant(0.0);
    for (int i = 0; i < k; ++i) {
        const Jet ck_next = ck * c - sk * d;
        sk = ck * d + sk * c;
        ck = ck_next;
    }
    return ck;
}

}  // namespace

std::string RadialProfile::family_name() const {
    switch (family_) {
        case Family::constant: return "constant";
        case Family::axisym: return "axisym";
        case Family::bump: return "bump";
        case Family::linear_violation: return "linear_violation";
        case Family::custom: return "custom";
    }
    return "?";
}

RadialProfile RadialProfile::constant(double R) {
    if (!(R > 0.0)) throw DomainError("profile radius must be positive");
    return RadialProfile(Family::constant, [R](std::span<const Jet>) { return Jet::constant(R); }, R);
}

RadialProfile RadialProfile::axisym(int dimension, double R, double eps, double alpha) {
    if (!(R > 0.0) || !(R * (1.0 - std::abs(eps)) > 0.0))
        throw DomainError("axisym profile must stay positive");
    const double c = M_PI / alpha;
    auto rho = [=](std::span<const Jet> u) {
        if (dimension == 2) return (1.0 + eps * cos(u[0] * c)) * R;
        const Jet q = Jet::mul(u[0], u[0]) + Jet::mul(u[1], u[1]);
        return (1.0 + eps * cos_sqrt(q * (c * c))) * R;
    };
    return RadialProfile(Family::axisym, rho, R, eps);
}

RadialProfile RadialProfile::bump(int dimension, double R, double eps, int k, double alpha) {
    if (!(R > 0.0) || !(R * (1.0 - std::abs(eps)) > 0.0))
        throw DomainError("bump profile must stay positive");
    const double s_lo = 0.3 * alpha;
    auto rho = [=](std::span<const Jet> u) {
        if (dimension == 2) {
            const double z = u[0].value();
            if (std::abs(z) <= s_lo) return Jet::constant(R);
            const Jet s = (z > 0.0) ? u[0] : -u[0];
            const Jet chi = smooth_transition((s - s_lo) / (alpha - s_lo));
            return (1.0 + eps * chi) * R;
        }
        const Jet q = Jet::mul(u[0], u[0]) + Jet::mul(u[1], u[1]);
        if (std::sqrt(q.value()) <= s_lo) return Jet::constant(R);
        const Jet s = sqrt(q);
        const Jet chi = smooth_transition((s - s_lo) / (alpha - s_lo));
        return (1.0 + eps * chi * cos_k_phi(u[0], u[1], s, k)) * R;
    };
    return RadialProfile(Family::bump, rho, R, eps, k);
}

RadialProfile RadialProfile::linear_violation(int dimension, double R, double eps, double alpha) {
    if (!(R > 0.0)) throw DomainError("profile radius must be positive");
    auto rho = [=](std::span<const Jet> u) {
        if (dimension == 2) return (1.0 + (eps / alpha) * u[0]) * R;
        const Jet q = Jet::mul(u[0], u[0]) + Jet::mul(u[1], u[1]);
        return (1.0 + (eps / alpha) * sqrt(q)) * R;
    };
    return RadialProfile(Family::linear_violation, rho, R, eps);
}

namespace {

// u -> rho(u) Theta(u) over the planar cap coordinates (N = 3).
class PolarGraphChart : public Chart {
public:
    PolarGraphChart(SphericalDomainSpec spec, RadialProfile profile)
        : spec_(std::move(spec)), profile_(std::move(profile)) {}

    int ambient_dim() const override { return 3; }
    int param_dim() const override { return 2; }

    bool in_domain(const VectorXd& u) const override {
        const double s = u.norm();
        if (s <= 1e-14) return true;
        return s <= spec_.b(std::atan2(u[1], u[0])) + 1e-9;
    }

    void eval(std::span<const Jet> u, std::span<Jet> out) const override {
        const Jet q = Jet::mul(u[0], u[0]) + Jet::mul(u[1], u[1]);
        const Jet f = sin_sqrt_over_sqrt(q);
        const Jet rho = profile_.rho(u);
        out[0] = rho * (u[0] * f);
        out[1] = rho * (u[1] * f);
        out[2] = rho * cos_sqrt(q);
    }

private:
    SphericalDomainSpec spec_;
    RadialProfile profile_;
};

// zeta -> rho(zeta) (cos(mid + zeta), sin(mid + zeta)) over the arc (N = 2).
class PolarCurveChart : public Chart {
public:
    PolarCurveChart(SphericalDomainSpec spec, RadialProfile profile)
        : spec_(std::move(spec)), profile_(std::move(profile)) {}

    int ambient_dim() const override { return 2; }
    int param_dim() const override { return 1; }
    bool in_domain(const VectorXd& u) const override { return std::abs(u[0]) <= spec_.alpha + 1e-12; }

    void eval(std::span<const Jet> u, std::span<Jet> out) const override {
        const Jet a = u[0] + spec_.mid;
        const Jet rho = profile_.rho(u.subspan(0, 1));
        out[0] = rho * cos(a);
        out[1] = rho * sin(a);
    }

private:
    SphericalDomainSpec spec_;
    RadialProfile profile_;
};

// x(u) + t nu(u); differentiating nu costs one jet order.
class OffsetChart : public Chart {
public:
    OffsetChart(std::shared_ptr<const Chart> base, Orientation orient, double t)
        : base_(std::move(base)), orient_(std::move(orient)), t_(t) {}

    int ambient_dim() const override { return base_->ambient_dim(); }
    int param_dim() const override { return base_->param_dim(); }
    int max_jet_order() const override { return std::max(0, base_->max_jet_order() - 1); }
    bool in_domain(const VectorXd& u) const override { return base_->in_domain(u); }

    void eval(std::span<const Jet> u, std::span<Jet> out) const override {
        const int N = ambient_dim(), M = param_dim();
        VectorXd uv(M);
        int order = max_jet_order();
        for (int i = 0; i < M; ++i) {
            uv[i] = u[i].value();
            // Seed inputs only: we expand about the evaluation point.
            if (u[i].d(1 - i) != 0.0 || u[i].coeff(i == 0 ? 2 : 0, i == 0 ? 0 : 2) != 0.0)
                throw Error("OffsetChart requires seed-jet inputs");
            order = std::min(order, u[i].order());
        }
        const SurfaceJets base(*base_, uv, orient_);
        for (int a = 0; a < N; ++a)
            out[a] = (base.x[a] + base.nu[a] * t_).truncated(order);
    }

private:
    std::shared_ptr<const Chart> base_;
    Orientation orient_;
    double t_;
};

}  // namespace

void FreeBoundarySurface::audit(bool expect_on_cone) {
    boundary_on_cone_ = expect_on_cone;
    const int N = ambient_dim();

    min_support_ = std::numeric_limits<double>::infinity();
    const int n_rad = 12, n_ang = (N == 3) ? 24 : 1;
    for (int j = 0; j < n_rad; ++j) {
        const double xi = (j + 0.5) / n_rad;
        for (int i = 0; i < n_ang; ++i) {
            VectorXd u;
            if (N == 3) {
                const double phi = 2.0 * M_PI * i / n_ang;
                const double s = xi * cone_->domain().b(phi);
                u = Vector2d(s * std::cos(phi), s * std::sin(phi));
            } else {
                u = VectorXd::Constant(1, (2.0 * xi - 1.0) * cone_->domain().alpha);
            }
            min_support_ = std::min(min_support_, jets(u).support.value());
        }
    }

    ortho_residual_ = std::numeric_limits<double>::quiet_NaN();
    if (expect_on_cone) {
        ortho_residual_ = 0.0;
        const int nb = (N == 3) ? 128 : 2;
        for (int i = 0; i < nb; ++i) {
            const double phi = (N == 3) ? 2.0 * M_PI * i / nb : double(i);
            const BoundaryData bd = boundary_data(phi);
            ortho_residual_ = std::max(ortho_residual_, std::abs(bd.nu_dot_n));
            min_support_ = std::min(min_support_, bd.support);
        }
    }
}

VectorXd FreeBoundarySurface::boundary_param(double phi) const {
    if (ambient_dim() == 2) {
        const int side = (phi < 0.5) ? 0 : 1;
        return VectorXd::Constant(1, (side == 0 ? -1.0 : 1.0) * cone_->domain().alpha);
    }
    const double b = cone_->domain().b(phi);
    return Vector2d(b * std::cos(phi), b * std::sin(phi));
}

VectorXd FreeBoundarySurface::boundary_param_velocity(double phi) const {
    if (ambient_dim() == 2) return VectorXd::Zero(1);
    const Jet bj = cone_->domain().b_jet(Jet::variable(phi, 0));
    const double b = bj.value(), db = bj.d(0);
    return Vector2d(db * std::cos(phi) - b * std::sin(phi),
                    db * std::sin(phi) + b * std::cos(phi));
}

BoundaryData FreeBoundarySurface::boundary_data(double phi) const {
    const int N = ambient_dim();
    BoundaryData bd;
    bd.phi = phi;
    bd.u = boundary_param(phi);

    const SurfaceJets P = jets(bd.u);
    bd.x.resize(N);
    bd.nu.resize(N);
    for (int a = 0; a < N; ++a) {
        bd.x[a] = P.x[a].value();
        bd.nu[a] = P.nu[a].value();
    }
    bd.support = bd.x.dot(bd.nu);
    bd.nu_T = bd.nu - (bd.support / bd.x.squaredNorm()) * bd.x;

    MatrixXd dx(N, P.M);
    for (int i = 0; i < P.M; ++i)
        for (int a = 0; a < N; ++a) dx(a, i) = P.dx[i][a].value();

    if (N == 3) {
        const VectorXd du = boundary_param_velocity(phi);
        const VectorXd tau = dx * du;
        bd.length_weight = tau.norm();
        if (bd.length_weight <= 1e-14) throw ChartDegeneracyError("degenerate boundary tangent");
        const VectorXd that = tau / bd.length_weight;
        // Outward in parameter space: push forward the radial direction and
        // remove the boundary-tangent component.
        const Vector2d e_r(std::cos(phi), std::sin(phi));
        VectorXd w = dx * e_r;
        w -= w.dot(that) * that;
        const double wn = w.norm();
        if (wn <= 1e-14) throw ChartDegeneracyError("degenerate conormal");
        bd.conormal = w / wn;
    } else {
        VectorXd tdir = dx.col(0).normalized();
        bd.conormal = (bd.u[0] < 0.0) ? VectorXd(-tdir) : tdir;
        bd.length_weight = 1.0;
    }

    bd.nu_dot_n = std::numeric_limits<double>::quiet_NaN();
    if (boundary_on_cone_) {
        bd.cone_normal = cone_->normal_at(bd.x);
        bd.nu_dot_n = bd.nu.dot(*bd.cone_normal);
    }
    return bd;
}

BoundaryData boundary_data_at(const FreeBoundarySurface& surface, double phi) {
    return surface.boundary_data(phi);
}

PolarGraphSurface::PolarGraphSurface(std::shared_ptr<const ConeGeometry> cone, RadialProfile profile)
    : FreeBoundarySurface(cone,
                          cone->ambient_dim() == 3
                              ? std::shared_ptr<const Chart>(
                                    std::make_shared<PolarGraphChart>(cone->domain(), profile))
                              : std::shared_ptr<const Chart>(
                                    std::make_shared<PolarCurveChart>(cone->domain(), profile)),
                          Orientation::radial()),
      profile_(std::move(profile)) {
    audit(true);
}

OffsetSurface::OffsetSurface(std::shared_ptr<const FreeBoundarySurface> base, double t)
    : FreeBoundarySurface(base->cone_ptr(),
                          std::make_shared<OffsetChart>(base->chart_ptr(), base->orientation(), t),
                          base->orientation()),
      base_(std::move(base)), t_(t) {
    // Focal-distance probe: the offset area weight must stay positive.
    const int N = ambient_dim();
    const int n_rad = 10, n_ang = (N == 3) ? 16 : 1;
    try {
        for (int j = 0; j <= n_rad; ++j) {
            const double xi = std::min(1.0, double(j) / n_rad + 1e-3);
            for (int i = 0; i < n_ang; ++i) {
                VectorXd u;
                if (N == 3) {
                    const double phi = 2.0 * M_PI * i / n_ang;
                    const double s = xi * cone_->domain().b(phi);
                    u = Vector2d(s * std::cos(phi), s * std::sin(phi));
                } else {
                    u = VectorXd::Constant(1, (2.0 * xi - 1.0) * cone_->domain().alpha);
                }
                if (!(jets(u).area_weight.value() > 0.0))
                    throw FocalDistanceError("offset exceeds the focal distance");
            }
        }
    } catch (const std::domain_error&) {
        throw FocalDistanceError("offset exceeds the focal distance");
    }
    audit(false);
}

std::shared_ptr<PolarGraphSurface> spherical_sector(std::shared_ptr<const ConeGeometry> cone,
                                                    double R) {
    return std::make_shared<PolarGraphSurface>(std::move(cone), RadialProfile::constant(R));
}

std::shared_ptr<PolarGraphSurface> build_polar_graph(std::shared_ptr<const ConeGeometry> cone,
                                                     RadialProfile profile) {
    return std::make_shared<PolarGraphSurface>(std::move(cone), std::move(profile));
}

std::shared_ptr<OffsetSurface> normal_offset(std::shared_ptr<const FreeBoundarySurface> base,
                                             double t) {
    return std::make_shared<OffsetSurface>(std::move(base), t);
}

}  // namespace conegeo
