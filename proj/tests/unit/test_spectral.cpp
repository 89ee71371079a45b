#include <doctest.h>

#include <conegeo/spectral.hpp>

#include "oracles.hpp"

using namespace conegeo;

TEST_SUITE("spectral") {

TEST_CASE("polar mesh audit") {
    ConeGeometry cone(SphericalDomainSpec::perturbed_cap(1.2, 0.1, 3));
    const SurfaceMesh mesh = build_polar_mesh(cone, 16);
    // all triangles positively oriented
    for (const auto& t : mesh.triangles) {
        const Vector2d e1 = mesh.vertices[t[1]] - mesh.vertices[t[0]];
        const Vector2d e2 = mesh.vertices[t[2]] - mesh.vertices[t[0]];
        CHECK(e1.x() * e2.y() - e1.y() * e2.x() > 0.0);
    }
    // boundary vertices sit on s = b(phi)
    for (const int i : mesh.boundary_vertices) {
        const Vector2d& v = mesh.vertices[i];
        const double phi = std::atan2(v.y(), v.x());
        CHECK(std::abs(v.norm() - cone.domain().b(phi)) < 1e-10);
    }
    // refinement roughly quadruples the vertex count
    const SurfaceMesh fine = build_polar_mesh(cone, 32);
    const double ratio = double(fine.vertex_count()) / mesh.vertex_count();
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    CHECK(fine.h < 0.6 * mesh.h);
}

TEST_CASE("build_mesh honors the target edge length") {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    auto s = spherical_sector(cone, 1.0);
    const SurfaceMesh mesh = build_mesh(*s, 1.2 / 16.0);
    CHECK(mesh.h < 1.5 * (1.2 / 16.0));
    const int expected = static_cast<int>(std::round((1.2 / (1.2 / 16.0)) * (1.2 / (1.2 / 16.0))));
    CHECK(mesh.vertex_count() > 4 * expected);  // O((alpha/h)^2) with the angular factor
}

TEST_CASE("stiffness kernel contains the constants") {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    auto s = spherical_sector(cone, 1.0);
    const SurfaceMesh mesh = build_polar_mesh(*cone, 12);
    const auto ops = assemble_operators(s->chart(), mesh);
    const VectorXd ones = VectorXd::Ones(ops.K.rows());
    CHECK((ops.K * ones).norm() < 1e-12 * ops.K.coeffs().abs().sum());
    Eigen::SparseMatrix<double> skew = ops.K - Eigen::SparseMatrix<double>(ops.K.transpose());
    CHECK(skew.coeffs().abs().sum() < 1e-12);
}

TEST_CASE("flat unit square: lambda1 = pi^2 within 1%") {
    VectorXd o = VectorXd::Zero(3), a = VectorXd::Unit(3, 0), b = VectorXd::Unit(3, 1);
    PlanarPatchChart chart(o, a, b);
    const SurfaceMesh mesh = build_rect_mesh(1.0, 1.0, 64, 64);
    const SpectralResult res = lambda1_neumann(chart, mesh);
    CHECK(std::abs(res.lambda1 - M_PI * M_PI) / (M_PI * M_PI) < 0.01);
    CHECK(res.constant_orthogonality < 1e-10);
}

TEST_CASE("hemisphere sector: lambda1 converges to 2 at order about 2") {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(M_PI / 2.0));
    auto s = spherical_sector(cone, 1.0);
    std::vector<SurfaceMesh> meshes;
    for (const int n_r : {8, 16, 32}) meshes.push_back(build_polar_mesh(*cone, n_r));
    const SpectralResult res = lambda1_study(s->chart(), meshes);
    CHECK(std::abs(res.lambda1 - 2.0) / 2.0 < 0.01);
    CHECK(res.observed_order > 1.5);
    CHECK(res.observed_order < 2.5);
    // Cauchy refinement: successive differences shrink
    CHECK(std::abs(res.table[2].lambda - res.table[1].lambda) <
          std::abs(res.table[1].lambda - res.table[0].lambda));
    // eigenfunction changes sign
    CHECK(res.eigenvector.minCoeff() < 0.0);
    CHECK(res.eigenvector.maxCoeff() > 0.0);
}

TEST_CASE("scaling law: lambda1(R Gamma) = lambda1(Gamma)/R^2") {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(1.2));
    const SurfaceMesh mesh = build_polar_mesh(*cone, 16);
    const double l1 = lambda1_neumann(*spherical_sector(cone, 1.0), mesh).lambda1;
    const double l2 = lambda1_neumann(*spherical_sector(cone, 2.0), mesh).lambda1;
    CHECK(std::abs(l2 - l1 / 4.0) < 1e-8 * l1);
}

TEST_CASE("cap sectors match the Legendre shooting oracle") {
    for (const double alpha : {1.2, M_PI / 2.0}) {
        auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(alpha));
        auto s = spherical_sector(cone, 1.0);
        std::vector<SurfaceMesh> meshes;
        for (const int n_r : {8, 16, 32}) meshes.push_back(build_polar_mesh(*cone, n_r));
        const SpectralResult res = lambda1_study(s->chart(), meshes);
        const double oracle = oracles::cap_neumann_lambda1(alpha);
        CHECK(std::abs(res.lambda1 - oracle) / oracle < 0.01);
    }
}

TEST_CASE("convex caps satisfy lambda1 >= N - 1") {
    for (const double alpha : {0.9, 1.2, M_PI / 2.0}) {
        const double oracle = oracles::cap_neumann_lambda1(alpha);
        CHECK(oracle >= 2.0 - 1e-6);
    }
}

}  // TEST_SUITE
