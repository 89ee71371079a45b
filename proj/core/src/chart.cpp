#include "conegeo/chart.hpp"

#include <Eigen/SVD>

namespace conegeo {

JetVec Chart::eval_at(const VectorXd& u, int order) const {
    if (!in_domain(u)) throw DomainError("chart parameter outside admissible domain");
    const int m = param_dim();
    std::array<Jet, 2> uj;
    for (int i = 0; i < 2; ++i) {
        const double v = (i < m) ? u[i] : 0.0;
        uj[i] = (i < m) ? Jet::variable(v, i) : Jet::constant(v);
        uj[i] = uj[i].truncated(order);
    }
    JetVec x(ambient_dim());
    eval(std::span<const Jet>(uj.data(), 2), std::span<Jet>(x.v.data(), x.n));
    return x;
}

VectorXd Chart::position(const VectorXd& u) const {
    const JetVec x = eval_at(u, 0);
    VectorXd p(x.n);
    for (int i = 0; i < x.n; ++i) p[i] = x[i].value();
    return p;
}

ChartJet chart_jet_from(const VectorXd& u, const JetVec& x, int ambient_dim, int param_dim) {
    ChartJet j;
    j.u = u;
    j.x.resize(ambient_dim);
    j.dx.resize(ambient_dim, param_dim);
    j.ddx.assign(param_dim, std::vector<VectorXd>(param_dim, VectorXd(ambient_dim)));
    for (int a = 0; a < ambient_dim; ++a) {
        j.x[a] = x[a].value();
        for (int i = 0; i < param_dim; ++i) j.dx(a, i) = x[a].d(i);
    }
    for (int i = 0; i < param_dim; ++i)
        for (int k = i; k < param_dim; ++k) {
            for (int a = 0; a < ambient_dim; ++a) j.ddx[i][k][a] = x[a].d2(i, k);
            if (k != i) j.ddx[k][i] = j.ddx[i][k];
        }
    return j;
}

ChartJet chart_jet(const Chart& chart, const VectorXd& u) {
    const JetVec x = chart.eval_at(u, std::min(2, chart.max_jet_order()));
    ChartJet j = chart_jet_from(u, x, chart.ambient_dim(), chart.param_dim());

    Eigen::JacobiSVD<MatrixXd> svd(j.dx);
    const auto& s = svd.singularValues();
    if (s[s.size() - 1] <= 1e-12 * s[0])
        throw ChartDegeneracyError("chart differential is rank deficient");
    return j;
}

// ---------------------------------------------------------------------------

PointEvaluatorChart::PointEvaluatorChart(int ambient_dim, int param_dim,
                                         std::function<VectorXd(const VectorXd&)> position,
                                         double step)
    : n_(ambient_dim), m_(param_dim), f_(std::move(position)), h_(step) {}

void PointEvaluatorChart::eval(std::span<const Jet> u, std::span<Jet> out) const {
    VectorXd u0(m_);
    for (int i = 0; i < m_; ++i) {
        u0[i] = u[i].value();
        // Seed-variable inputs only: this chart expands about a point.
        if (u[i].d(1 - i) != 0.0 || u[i].d2(i, i) != 0.0)
            throw Error("PointEvaluatorChart requires seed-jet inputs");
    }

    // Central differences, Richardson-extrapolated from steps h and h/2.
    auto d1 = [&](int dir, double h) {
        VectorXd up = u0, um = u0;
        up[dir] += h;
        um[dir] -= h;
        return VectorXd(((f_(up) - f_(um)) / (2.0 * h)).eval());
    };
    auto d2 = [&](int dir, double h) {
        VectorXd up = u0, um = u0;
        up[dir] += h;
        um[dir] -= h;
        return VectorXd(((f_(up) - 2.0 * f_(u0) + f_(um)) / (h * h)).eval());
    };
    auto dcross = [&](double h) {
        VectorXd upp = u0, upm = u0, ump = u0, umm = u0;
        upp[0] += h; upp[1] += h;
        upm[0] += h; upm[1] -= h;
        ump[0] -= h; ump[1] += h;
        umm[0] -= h; umm[1] -= h;
        return VectorXd(((f_(upp) - f_(upm) - f_(ump) + f_(umm)) / (4.0 * h * h)).eval());
    };
    auto rich = [](const VectorXd& coarse, const VectorXd& fine) {
        return VectorXd(((4.0 * fine - coarse) / 3.0).eval());
    };

    const VectorXd x0 = f_(u0);
    std::vector<VectorXd> dx(m_), dxx(m_);
    for (int i = 0; i < m_; ++i) {
        dx[i] = rich(d1(i, h_), d1(i, h_ / 2.0));
        dxx[i] = rich(d2(i, h_), d2(i, h_ / 2.0));
    }
    VectorXd dxy;
    if (m_ == 2) dxy = rich(dcross(h_), dcross(h_ / 2.0));

    for (int a = 0; a < n_; ++a) {
        Jet j = Jet::constant(x0[a]);
        for (int i = 0; i < m_; ++i) {
            Jet hi = u[i] - u0[i];
            j += hi * dx[i][a];
            j += Jet::mul(hi, hi) * (0.5 * dxx[i][a]);
        }
        if (m_ == 2) j += Jet::mul(u[0] - u0[0], u[1] - u0[1]) * dxy[a];
        out[a] = j.truncated(2);
    }
}

// ---------------------------------------------------------------------------

PlanarPatchChart::PlanarPatchChart(VectorXd origin, VectorXd a, VectorXd b)
    : origin_(std::move(origin)), a_(std::move(a)), b_(std::move(b)) {}

void PlanarPatchChart::eval(std::span<const Jet> u, std::span<Jet> out) const {
    for (int k = 0; k < origin_.size(); ++k)
        out[k] = Jet::constant(origin_[k]) + u[0] * a_[k] + u[1] * b_[k];
}

void SphereExponentialChart::eval(std::span<const Jet> u, std::span<Jet> out) const {
    const Jet q = Jet::mul(u[0], u[0]) + Jet::mul(u[1], u[1]);
    const Jet f = sin_sqrt_over_sqrt(q);
    out[0] = Jet::mul(u[0], f) * radius_;
    out[1] = Jet::mul(u[1], f) * radius_;
    out[2] = cos_sqrt(q) * radius_;
}

}  // namespace conegeo
