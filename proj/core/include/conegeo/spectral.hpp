#pragma once

#include <Eigen/Sparse>
#include <span>

#include "conegeo/surface.hpp"

namespace conegeo {

/// Triangulation of the planar parameter domain. For polar graphs the pole
/// is an ordinary interior vertex (the chart is smooth there) and the outer
/// ring sits exactly on s = b(phi).
struct SurfaceMesh {
    std::vector<Vector2d> vertices;
    std::vector<std::array<int, 3>> triangles;  // positively oriented
    std::vector<int> boundary_vertices;
    double h = 0.0;  // max edge length in parameter space

    int vertex_count() const { return static_cast<int>(vertices.size()); }
};

/// Structured polar-fan triangulation with n_r rings; the angular count
/// keeps parameter elements roughly isotropic.
SurfaceMesh build_polar_mesh(const ConeGeometry& cone, int n_r);
/// Polar mesh sized by a target parameter-space edge length.
SurfaceMesh build_mesh(const FreeBoundarySurface& surface, double target_h);
/// Structured grid on [0, ax] x [0, ay] (validation geometry).
SurfaceMesh build_rect_mesh(double ax, double ay, int nx, int ny);

/// P1 stiffness and mass assembled with the pulled-back metric (one-point
/// quadrature at element centroids); Neumann is the natural condition, so
/// no boundary terms appear. K is symmetric positive semidefinite with the
/// constants in its kernel, M symmetric positive definite.
struct AssembledOperators {
    Eigen::SparseMatrix<double> K, M;
};
AssembledOperators assemble_operators(const Chart& chart, const SurfaceMesh& mesh);

/// First nontrivial Neumann eigenvalue by shifted inverse iteration with
/// constant deflation on the M-orthogonal complement of constants.
struct SpectralResult {
    double lambda1 = 0.0;
    VectorXd eigenvector;
    double residual = 0.0;  // ||K v - lambda M v|| / ||M v|| (can sit at the
                            // eigenvalue-splitting scale for degenerate modes)
    double constant_orthogonality = 0.0;  // |<1, v>_M| with v M-normalized
    int iterations = 0;

    struct Row {
        double h = 0.0;
        int vertices = 0;
        double lambda = 0.0;
    };
    std::vector<Row> table;          // refinement study (when provided)
    double extrapolated = 0.0;       // Richardson extrapolation over the table
    double observed_order = 0.0;     // ~2 for P1 elements
    double uncertainty = 0.0;        // |extrapolated - finest| / extrapolated
};

SpectralResult lambda1_neumann(const Chart& chart, const SurfaceMesh& mesh);
SpectralResult lambda1_neumann(const FreeBoundarySurface& surface, const SurfaceMesh& mesh);

/// Refinement study over >= 2 meshes; the returned result carries the
/// finest-mesh eigenpair plus the table and extrapolation metadata.
SpectralResult lambda1_study(const Chart& chart, std::span<const SurfaceMesh> meshes);

}  // namespace conegeo
