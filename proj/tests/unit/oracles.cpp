#include "oracles.hpp"

namespace conegeo::oracles {

namespace {

VectorXd pos(const Chart& chart, VectorXd u) { return chart.position(u); }

VectorXd shift(const VectorXd& u, int dir, double h) {
    VectorXd v = u;
    v[dir] += h;
    return v;
}

// Unit normal from finite-difference first derivatives only.
VectorXd fd_normal(const Chart& chart, const VectorXd& u, const Orientation& orient, double h) {
    const int N = chart.ambient_dim(), M = chart.param_dim();
    MatrixXd dx(N, M);
    for (int i = 0; i < M; ++i)
        dx.col(i) = (pos(chart, shift(u, i, h)) - pos(chart, shift(u, i, -h))) / (2.0 * h);
    VectorXd cand(N);
    if (N == 3) {
        cand = Eigen::Vector3d(dx.col(0)).cross(Eigen::Vector3d(dx.col(1)));
    } else {
        cand << dx(1, 0), -dx(0, 0);
    }
    cand.normalize();
    return cand * orientation_sign(orient, pos(chart, u), cand);
}

}  // namespace

ChartJet fd_chart_jet(const Chart& chart, const VectorXd& u, double h) {
    const int N = chart.ambient_dim(), M = chart.param_dim();
    ChartJet j;
    j.u = u;
    j.x = pos(chart, u);
    j.dx.resize(N, M);
    j.ddx.assign(M, std::vector<VectorXd>(M, VectorXd(N)));
    for (int i = 0; i < M; ++i) {
        j.dx.col(i) = (pos(chart, shift(u, i, h)) - pos(chart, shift(u, i, -h))) / (2.0 * h);
        j.ddx[i][i] =
            (pos(chart, shift(u, i, h)) - 2.0 * j.x + pos(chart, shift(u, i, -h))) / (h * h);
    }
    if (M == 2) {
        const VectorXd pp = pos(chart, shift(shift(u, 0, h), 1, h));
        const VectorXd pm = pos(chart, shift(shift(u, 0, h), 1, -h));
        const VectorXd mp = pos(chart, shift(shift(u, 0, -h), 1, h));
        const VectorXd mm = pos(chart, shift(shift(u, 0, -h), 1, -h));
        j.ddx[0][1] = (pp - pm - mp + mm) / (4.0 * h * h);
        j.ddx[1][0] = j.ddx[0][1];
    }
    return j;
}

double fd_mean_curvature(const Chart& chart, const VectorXd& u, const Orientation& orient,
                         double h) {
    const int N = chart.ambient_dim(), M = chart.param_dim();
    MatrixXd dx(N, M), dnu(N, M);
    for (int i = 0; i < M; ++i) {
        dx.col(i) = (pos(chart, shift(u, i, h)) - pos(chart, shift(u, i, -h))) / (2.0 * h);
        dnu.col(i) = (fd_normal(chart, shift(u, i, h), orient, h) -
                      fd_normal(chart, shift(u, i, -h), orient, h)) /
                     (2.0 * h);
    }
    const MatrixXd g = dx.transpose() * dx;
    const MatrixXd gi = g.inverse();
    double H = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) H += gi(i, j) * dnu.col(i).dot(dx.col(j));
    return H / (N - 1);
}

VectorXd cap_cone_conormal(double alpha, double phi) {
    VectorXd n(3);
    n << std::cos(alpha) * std::cos(phi), std::cos(alpha) * std::sin(phi), -std::sin(alpha);
    return n;
}

namespace {

// f'' + cot(theta) f' + (lambda - m^2/sin^2) f = 0; returns f'(alpha) for
// the solution regular at theta = 0 (sign-normalized).
double shoot(double lambda, int m, double alpha) {
    const int steps = 4000;
    const double t0 = 1e-6;
    double f, df;
    if (m == 0) {
        f = 1.0 - lambda * t0 * t0 / 4.0;
        df = -lambda * t0 / 2.0;
    } else {
        f = std::pow(t0, m);
        df = m * std::pow(t0, m - 1);
    }
    const double dt = (alpha - t0) / steps;
    auto acc = [&](double t, double y, double dy) {
        return -dy / std::tan(t) - (lambda - m * m / (std::sin(t) * std::sin(t))) * y;
    };
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        const double k1y = df, k1v = acc(t, f, df);
        const double k2y = df + 0.5 * dt * k1v,
                     k2v = acc(t + 0.5 * dt, f + 0.5 * dt * k1y, df + 0.5 * dt * k1v);
        const double k3y = df + 0.5 * dt * k2v,
                     k3v = acc(t + 0.5 * dt, f + 0.5 * dt * k2y, df + 0.5 * dt * k2v);
        const double k4y = df + dt * k3v, k4v = acc(t + dt, f + dt * k3y, df + dt * k3v);
        f += dt * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0;
        df += dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0;
        t += dt;
        const double mag = std::max(std::abs(f), std::abs(df));
        if (mag > 1e12) {
            f /= mag;
            df /= mag;
        }
    }
    return df;
}

double first_root(int m, double alpha) {
    double prev = shoot(0.1, m, alpha);
    for (double lam = 0.2; lam < 60.0; lam += 0.1) {
        const double cur = shoot(lam, m, alpha);
        if (prev * cur < 0.0) {
            double lo = lam - 0.1, hi = lam;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (shoot(lo, m, alpha) * shoot(mid, m, alpha) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

double cap_neumann_lambda1(double alpha) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= 2; ++m) best = std::min(best, first_root(m, alpha));
    return best;
}

}  // namespace conegeo::oracles
