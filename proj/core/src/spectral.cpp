#include "conegeo/spectral.hpp"

#include <Eigen/SparseCholesky>
#include <random>

namespace conegeo {

SurfaceMesh build_polar_mesh(const ConeGeometry& cone, int n_r) {
    if (cone.ambient_dim() != 3) throw DomainError("polar meshes are built for N = 3 domains");
    if (n_r < 2) throw DomainError("polar mesh needs at least 2 rings");
    const auto& dom = cone.domain();
    const int n_a = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * n_r)));

    SurfaceMesh mesh;
    mesh.vertices.reserve(1 + static_cast<std::size_t>(n_r) * n_a);
    mesh.vertices.emplace_back(0.0, 0.0);
    for (int j = 1; j <= n_r; ++j) {
        const double xi = double(j) / n_r;
        for (int i = 0; i < n_a; ++i) {
            const double phi = 2.0 * M_PI * i / n_a;
            const double s = xi * dom.b(phi);
            mesh.vertices.emplace_back(s * std::cos(phi), s * std::sin(phi));
        }
    }
    auto idx = [&](int j, int i) { return 1 + (j - 1) * n_a + (i % n_a); };

    for (int i = 0; i < n_a; ++i)
        mesh.triangles.push_back({0, idx(1, i), idx(1, i + 1)});
    for (int j = 1; j < n_r; ++j)
        for (int i = 0; i < n_a; ++i) {
            mesh.triangles.push_back({idx(j, i), idx(j + 1, i), idx(j + 1, i + 1)});
            mesh.triangles.push_back({idx(j, i), idx(j + 1, i + 1), idx(j, i + 1)});
        }
    for (int i = 0; i < n_a; ++i) mesh.boundary_vertices.push_back(idx(n_r, i));

    for (auto& t : mesh.triangles) {
        const Vector2d e1 = mesh.vertices[t[1]] - mesh.vertices[t[0]];
        const Vector2d e2 = mesh.vertices[t[2]] - mesh.vertices[t[0]];
        if (e1.x() * e2.y() - e1.y() * e2.x() <= 0.0) std::swap(t[1], t[2]);
        mesh.h = std::max({mesh.h, e1.norm(), e2.norm(),
                           (mesh.vertices[t[2]] - mesh.vertices[t[1]]).norm()});
    }
    return mesh;
}

SurfaceMesh build_mesh(const FreeBoundarySurface& surface, double target_h) {
    const double bmax = surface.cone().domain().max_b();
    const int n_r = std::max(2, static_cast<int>(std::ceil(bmax / target_h)));
    return build_polar_mesh(surface.cone(), n_r);
}

SurfaceMesh build_rect_mesh(double ax, double ay, int nx, int ny) {
    SurfaceMesh mesh;
    auto idx = [&](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.vertices.emplace_back(ax * i / nx, ay * j / ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            mesh.triangles.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            mesh.triangles.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
        }
    for (int i = 0; i <= nx; ++i) {
        mesh.boundary_vertices.push_back(idx(i, 0));
        mesh.boundary_vertices.push_back(idx(i, ny));
    }
    for (int j = 1; j < ny; ++j) {
        mesh.boundary_vertices.push_back(idx(0, j));
        mesh.boundary_vertices.push_back(idx(nx, j));
    }
    mesh.h = std::hypot(ax / nx, ay / ny);
    return mesh;
}

AssembledOperators assemble_operators(const Chart& chart, const SurfaceMesh& mesh) {
    if (chart.param_dim() != 2) throw DomainError("assembly requires a 2-parameter chart");
    const int n = mesh.vertex_count();
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(mesh.triangles.size() * 9);
    tm.reserve(mesh.triangles.size() * 9);

    for (const auto& tri : mesh.triangles) {
        const Vector2d& p0 = mesh.vertices[tri[0]];
        const Vector2d& p1 = mesh.vertices[tri[1]];
        const Vector2d& p2 = mesh.vertices[tri[2]];
        Eigen::Matrix2d E;
        E.col(0) = p1 - p0;
        E.col(1) = p2 - p0;
        const double detE = E.determinant();
        if (detE <= 0.0) throw Error("inverted or degenerate mesh triangle");
        const double area = 0.5 * detE;

        // Barycentric gradients in parameter space.
        const Eigen::Matrix2d Einvt = E.inverse().transpose();
        Eigen::Matrix<double, 2, 3> grad;
        grad.col(1) = Einvt.col(0);
        grad.col(2) = Einvt.col(1);
        grad.col(0) = -grad.col(1) - grad.col(2);

        // Pulled-back metric at the centroid (one-point quadrature).
        const Vector2d c = (p0 + p1 + p2) / 3.0;
        const JetVec xj = chart.eval_at(c, 1);
        const int N = chart.ambient_dim();
        MatrixXd dx(N, 2);
        for (int a = 0; a < N; ++a)
            for (int i = 0; i < 2; ++i) dx(a, i) = xj[a].d(i);
        const Eigen::Matrix2d g = dx.transpose() * dx;
        const double detg = g.determinant();
        if (detg <= 0.0) throw ChartDegeneracyError("singular element metric");
        const double w = std::sqrt(detg);
        const Eigen::Matrix2d ginv = g.inverse();

        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                tk.emplace_back(tri[a], tri[b], area * w * grad.col(a).dot(ginv * grad.col(b)));
                tm.emplace_back(tri[a], tri[b], area * w * (a == b ? 1.0 / 6.0 : 1.0 / 12.0));
            }
    }

    AssembledOperators ops;
    ops.K.resize(n, n);
    ops.M.resize(n, n);
    ops.K.setFromTriplets(tk.begin(), tk.end());
    ops.M.setFromTriplets(tm.begin(), tm.end());
    return ops;
}

namespace {

SpectralResult solve_lambda1(const AssembledOperators& ops) {
    const int n = ops.K.rows();
    const VectorXd ones = VectorXd::Ones(n);
    const VectorXd Mc = ops.M * ones;
    const double cMc = ones.dot(Mc);
    auto deflate = [&](VectorXd& v) { v -= (Mc.dot(v) / cMc) * ones; };

    const double sigma = 1e-6 * (ops.K.diagonal().sum() / ops.M.diagonal().sum());
    Eigen::SparseMatrix<double> A = ops.K + sigma * ops.M;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) throw SolverError("stiffness factorization failed");

    std::mt19937_64 rng(0x5DEECE66DULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    deflate(v);
    v /= std::sqrt(v.dot(ops.M * v));

    SpectralResult res;
    double rho_prev = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= 500; ++it) {
        VectorXd w = solver.solve(ops.M * v);
        deflate(w);
        const double mn = std::sqrt(w.dot(ops.M * w));
        if (!(mn > 0.0)) throw SolverError("inverse iteration collapsed");
        v = w / mn;
        const double rho = v.dot(ops.K * v) / v.dot(ops.M * v);
        res.iterations = it;
        if (std::abs(rho - rho_prev) <= 1e-12 * std::max(1.0, std::abs(rho))) {
            rho_prev = rho;
            break;
        }
        rho_prev = rho;
        if (it == 500) throw SolverError("eigenvalue iteration did not converge in 500 steps");
    }
    res.lambda1 = rho_prev;
    res.eigenvector = v;
    const VectorXd Mv = ops.M * v;
    res.residual = (ops.K * v - res.lambda1 * Mv).norm() / Mv.norm();
    res.constant_orthogonality = std::abs(ones.dot(Mv)) / std::sqrt(cMc * v.dot(Mv));
    return res;
}

}  // namespace

SpectralResult lambda1_neumann(const Chart& chart, const SurfaceMesh& mesh) {
    const AssembledOperators ops = assemble_operators(chart, mesh);
    SpectralResult res = solve_lambda1(ops);
    res.table.push_back({mesh.h, mesh.vertex_count(), res.lambda1});
    return res;
}

SpectralResult lambda1_neumann(const FreeBoundarySurface& surface, const SurfaceMesh& mesh) {
    return lambda1_neumann(surface.chart(), mesh);
}

SpectralResult lambda1_study(const Chart& chart, std::span<const SurfaceMesh> meshes) {
    if (meshes.size() < 2) throw Error("lambda1_study needs at least 2 meshes");
    SpectralResult finest;
    std::vector<SpectralResult::Row> table;
    for (const auto& mesh : meshes) {
        finest = lambda1_neumann(chart, mesh);
        table.push_back({mesh.h, mesh.vertex_count(), finest.lambda1});
    }
    finest.table = table;

    const std::size_t L = table.size();
    if (L >= 3) {
        const double d0 = table[L - 3].lambda - table[L - 2].lambda;
        const double d1 = table[L - 2].lambda - table[L - 1].lambda;
        if (d0 * d1 > 0.0) {
            finest.observed_order = std::log2(std::abs(d0 / d1));
            finest.extrapolated =
                table[L - 1].lambda - d1 / (std::pow(2.0, finest.observed_order) - 1.0);
        } else {
            finest.observed_order = 0.0;
            finest.extrapolated = table[L - 1].lambda;
        }
    } else {
        finest.extrapolated = table[L - 1].lambda;
    }
    finest.uncertainty =
        std::abs(finest.extrapolated - table[L - 1].lambda) / std::abs(finest.extrapolated);
    return finest;
}

}  // namespace conegeo
