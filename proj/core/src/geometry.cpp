#include "conegeo/geometry.hpp"

#include <Eigen/SVD>

namespace conegeo {

double orientation_sign(const Orientation& orient, const VectorXd& x, const VectorXd& cand) {
    double s = 0.0;
    switch (orient.mode) {
        case Orientation::Mode::radial_outward: s = x.dot(cand); break;
        case Orientation::Mode::align_reference: s = orient.reference.dot(cand); break;
    }
    if (s == 0.0) throw Error("orientation rule is degenerate at this node");
    return s > 0.0 ? 1.0 : -1.0;
}

JetVec normal_jets(const JetVec dx[2], int ambient_dim, int param_dim, double sign) {
    JetVec c(ambient_dim);
    if (ambient_dim == 3 && param_dim == 2) {
        c = cross(dx[0], dx[1]);
    } else if (ambient_dim == 2 && param_dim == 1) {
        c.v[0] = dx[0][1];
        c.v[1] = -dx[0][0];
    } else {
        throw Error("normal_jets supports ambient dimension 2 and 3 only");
    }
    const Jet nrm = sqrt(squared_norm(c));
    JetVec nu(ambient_dim);
    for (int a = 0; a < ambient_dim; ++a) nu[a] = (c[a] / nrm) * sign;
    return nu;
}

SurfaceJets::SurfaceJets(const Chart& chart, const VectorXd& u_in, const Orientation& orient)
    : SurfaceJets(chart.ambient_dim(), chart.param_dim(), u_in,
                  chart.eval_at(u_in, chart.max_jet_order()), orient) {}

SurfaceJets::SurfaceJets(int ambient_dim, int param_dim, const VectorXd& u_in, const JetVec& xj,
                         const Orientation& orient)
    : N(ambient_dim), M(param_dim), u(u_in), x(xj) {
    derive(orient);
}

void SurfaceJets::derive(const Orientation& orient) {
    for (int i = 0; i < M; ++i) dx[i] = x.derivative(i);

    VectorXd xv(N), cv(N);
    for (int a = 0; a < N; ++a) xv[a] = x[a].value();
    nu = normal_jets(dx.data(), N, M, 1.0);
    for (int a = 0; a < N; ++a) cv[a] = nu[a].value();
    const double sign = orientation_sign(orient, xv, cv);
    if (sign < 0.0)
        for (int a = 0; a < N; ++a) nu[a] = -nu[a];

    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) g[i][j] = dot(dx[i], dx[j]);

    Jet det;
    if (M == 1) {
        det = g[0][0];
        ginv[0][0] = Jet::constant(1.0) / g[0][0];
    } else {
        det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
        ginv[0][0] = g[1][1] / det;
        ginv[1][1] = g[0][0] / det;
        ginv[0][1] = -g[0][1] / det;
        ginv[1][0] = ginv[0][1];
    }
    area_weight = sqrt(det);

    // ii[i][j] = <grad_i nu, dx_j> = -<nu, d2x/du_i du_j>.
    for (int i = 0; i < M; ++i)
        for (int j = i; j < M; ++j) {
            ii[i][j] = -dot(nu, dx[i].derivative(j));
            if (j != i) ii[j][i] = ii[i][j];
        }

    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            shape[i][j] = Jet::constant(0.0);
            for (int k = 0; k < M; ++k) shape[i][j] += ginv[i][k] * ii[k][j];
        }

    Jet trS = shape[0][0];
    if (M == 2) trS += shape[1][1];
    H = trS / double(N - 1);

    tr_S2 = Jet::constant(0.0);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) tr_S2 += shape[i][j] * shape[j][i];

    if (N >= 3)
        sigma2 = (Jet::mul(trS, trS) - tr_S2) / double((N - 1) * (N - 2));
    else
        sigma2 = Jet::constant(0.0);

    support = dot(x, nu);
}

CurvaturePoint SurfaceJets::point() const {
    CurvaturePoint p;
    p.u = u;
    p.x.resize(N);
    p.nu.resize(N);
    for (int a = 0; a < N; ++a) {
        p.x[a] = x[a].value();
        p.nu[a] = nu[a].value();
    }
    p.g.resize(M, M);
    p.ii.resize(M, M);
    p.shape.resize(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            p.g(i, j) = g[i][j].value();
            p.ii(i, j) = ii[i][j].value();
            p.shape(i, j) = shape[i][j].value();
        }
    p.H = H.value();
    p.tr_S2 = tr_S2.value();
    if (N >= 3) p.sigma2 = sigma2.value();
    p.area_weight = area_weight.value();
    p.support = support.value();
    return p;
}

CurvaturePoint curvature_at(const ChartJet& jet, const Orientation& orient) {
    const int N = jet.ambient_dim(), M = jet.param_dim();

    CurvaturePoint p;
    p.u = jet.u;
    p.x = jet.x;
    p.g = jet.dx.transpose() * jet.dx;

    Eigen::JacobiSVD<MatrixXd> svd(jet.dx, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    if (s[M - 1] <= 1e-12 * s[0]) throw ChartDegeneracyError("singular metric");
    VectorXd cand = svd.matrixU().col(N - 1);
    p.nu = cand * orientation_sign(orient, jet.x, cand);

    p.ii.resize(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) p.ii(i, j) = -p.nu.dot(jet.ddx[i][j]);

    p.shape = p.g.ldlt().solve(p.ii);
    p.H = p.shape.trace() / double(N - 1);
    p.tr_S2 = (p.shape * p.shape).trace();
    if (N >= 3) {
        const double trS = p.shape.trace();
        p.sigma2 = (trS * trS - p.tr_S2) / double((N - 1) * (N - 2));
    }
    p.area_weight = std::sqrt(p.g.determinant());
    p.support = p.x.dot(p.nu);
    return p;
}

double tangential_divergence(const JetVec& field, const SurfaceJets& P) {
    double div = 0.0;
    for (int i = 0; i < P.M; ++i) {
        const JetVec dF = field.derivative(i);
        for (int j = 0; j < P.M; ++j) {
            double inner = 0.0;
            for (int a = 0; a < P.N; ++a) inner += dF[a].value() * P.dx[j][a].value();
            div += P.ginv[i][j].value() * inner;
        }
    }
    return div;
}

VectorXd OrthonormalFrame::gradient(const VectorXd& df) const {
    const VectorXd coeff = g_inv * df;
    return dx * coeff;
}

VectorXd OrthonormalFrame::frame_derivative(const MatrixXd& dW, int j) const {
    return dW * basis.col(j);
}

OrthonormalFrame orthonormal_frame(const ChartJet& jet) {
    const int N = jet.ambient_dim(), M = jet.param_dim();
    OrthonormalFrame f;
    f.dx = jet.dx;
    const MatrixXd g = jet.dx.transpose() * jet.dx;
    f.g_inv = g.inverse();

    f.e.resize(N, M);
    f.basis = MatrixXd::Zero(M, M);
    for (int j = 0; j < M; ++j) {
        VectorXd v = jet.dx.col(j);
        VectorXd b = VectorXd::Unit(M, j);
        for (int k = 0; k < j; ++k) {
            const double proj = f.e.col(k).dot(jet.dx.col(j));
            v -= proj * f.e.col(k);
            b -= proj * f.basis.col(k);
        }
        const double nrm = v.norm();
        if (nrm <= 1e-14) throw ChartDegeneracyError("degenerate frame");
        f.e.col(j) = v / nrm;
        f.basis.col(j) = b / nrm;
    }
    return f;
}

}  // namespace conegeo
