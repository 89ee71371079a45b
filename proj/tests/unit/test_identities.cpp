#include <doctest.h>

#include <conegeo/identities.hpp>

using namespace conegeo;

namespace {

std::shared_ptr<const ConeGeometry> cap_cone(double alpha) {
    return std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(alpha));
}

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("identity fields are tangent") {
    auto cone = cap_cone(1.2);
    auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
    for (const Vector2d u : {Vector2d(0.3, 0.2), Vector2d(-0.6, 0.4), Vector2d(0.9, -0.2)}) {
        const SurfaceJets P = g->jets(u);
        const JetVec F1 = field_F1(P), F2 = field_F2(P);
        double f1n = 0.0, f2n = 0.0;
        for (int a = 0; a < 3; ++a) {
            f1n += F1[a].value() * P.nu[a].value();
            f2n += F2[a].value() * P.nu[a].value();
        }
        CHECK(std::abs(f1n) < 1e-10);
        CHECK(std::abs(f2n) < 1e-10);
    }
}

TEST_CASE("mink1: sectors at machine precision, perturbed graphs below 1e-8") {
    auto cone = cap_cone(1.2);
    const auto rule = make_rule(*cone, 128, 48, 256);
    CHECK(std::abs(mink1_report(*spherical_sector(cone, 1.0), rule).residual) < 1e-14);
    auto g = build_polar_graph(cone, RadialProfile::axisym(3, 1.0, 0.1, 1.2));
    CHECK(std::abs(mink1_report(*g, rule).residual) < 1e-8);
}

TEST_CASE("mink1 negative control: residual equals the boundary term") {
    auto cone = cap_cone(1.2);
    auto g = build_polar_graph(cone, RadialProfile::linear_violation(3, 1.0, 0.1, 1.2));
    const auto rule = make_rule(*cone, 128, 48, 256);
    const auto rep = mink1_report(*g, rule);
    CHECK(std::abs(rep.residual) > 1e-4);  // genuinely nonzero
    CHECK(std::abs(rep.residual - rep.extras.at("boundary_flux")) < 1e-8);
}

TEST_CASE("mink2: sectors vanish on both sides") {
    auto cone = cap_cone(1.2);
    const auto rule = make_rule(*cone, 64, 24, 128);
    const auto rep = mink2_report(*spherical_sector(cone, 1.0), rule);
    CHECK(std::abs(rep.lhs) < 1e-12);
    CHECK(std::abs(rep.rhs) < 1e-12);
}

TEST_CASE("mink2 on bump graphs: identity with nonzero correction term") {
    for (const double alpha : {1.2, 2.0}) {
        auto cone = cap_cone(alpha);
        auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, alpha));
        const auto rule = make_rule(*cone, 128, 48, 256);
        const auto rep = mink2_report(*g, rule);
        CHECK(std::abs(rep.rhs) > 1e-4);
        CHECK(std::abs(rep.residual) < 1e-6);
        CHECK(rep.extras.at("forms_rel_gap") < 1e-9);
        // convex cone: non-positive correction; non-convex: positive here
        if (alpha < M_PI / 2.0)
            CHECK(rep.rhs < 0.0);
        else
            CHECK(rep.rhs > 0.0);
    }
}

TEST_CASE("mink2 residual decays at order >= 4 under refinement") {
    auto cone = cap_cone(2.0);
    auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 2.0));
    const auto levels = make_rule_levels(*cone, 32, 12, 64, 3);
    std::vector<double> res;
    for (const auto& rule : levels) res.push_back(std::abs(mink2_report(*g, rule).residual));
    CHECK(res[1] < res[0]);
    CHECK(res[2] < res[1]);
    CHECK(std::log2(res[0] / res[1]) >= 4.0);
}

TEST_CASE("mink2 scale invariance of the lhs/rhs ratio") {
    auto cone = cap_cone(2.0);
    const auto rule = make_rule(*cone, 96, 32, 192);
    auto g1 = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 2.0));
    auto g2 = build_polar_graph(cone, RadialProfile::bump(3, 2.0, 0.1, 2, 2.0));
    const auto r1 = mink2_report(*g1, rule), r2 = mink2_report(*g2, rule);
    // both sides scale by R^{N-2} (integrand ~ 1/R, area element ~ R^{N-1});
    // the lhs/rhs ratio is scale invariant
    CHECK(r2.lhs == doctest::Approx(2.0 * r1.lhs).epsilon(1e-8));
    CHECK(r2.rhs == doctest::Approx(2.0 * r1.rhs).epsilon(1e-8));
    CHECK(r1.lhs / r1.rhs == doctest::Approx(r2.lhs / r2.rhs).epsilon(1e-8));
}

TEST_CASE("generalized divergence theorem holds regardless of orthogonality") {
    auto cone = cap_cone(1.2);
    const auto rule = make_rule(*cone, 256, 64, 512);
    std::vector<std::shared_ptr<PolarGraphSurface>> surfaces = {
        build_polar_graph(cone, RadialProfile::linear_violation(3, 1.0, 0.1, 1.2)),
        build_polar_graph(cone, RadialProfile::axisym(3, 1.0, 0.1, 1.2)),
        build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.08, 3, 1.2)),
    };
    for (const auto& s : surfaces) {
        CHECK(std::abs(divergence_theorem_check_F1(*s, rule).residual) < 1e-8);
        // F2 needs C^1 fields up to the pole: skip the tip-singular profile.
        if (s->profile().pole_smooth())
            CHECK(std::abs(divergence_theorem_check_F2(*s, rule).residual) < 1e-7);
    }
    // zero field: 0 = 0
    const auto z = divergence_theorem_check(
        *surfaces[0], rule,
        [](const SurfaceJets& P) {
            JetVec f(P.N);
            for (int a = 0; a < P.N; ++a) f[a] = Jet::constant(0.0);
            return f;
        },
        "zero");
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
}

TEST_CASE("non-tangent fields are rejected") {
    auto cone = cap_cone(1.2);
    auto s = spherical_sector(cone, 1.0);
    const auto rule = make_rule(*cone, 16, 8, 16);
    CHECK_THROWS_AS((void)divergence_theorem_check(
                        *s, rule, [](const SurfaceJets& P) { return P.nu; }, "normal-field"),
                    Error);
}

TEST_CASE("pointwise identity suite") {
    auto cone = cap_cone(1.2);
    const auto sector_errors = pointwise_identity_suite(*spherical_sector(cone, 1.0), 100, 50, 3);
    CHECK(sector_errors.div_f1_max < 1e-10);
    CHECK(sector_errors.div_f2_max < 1e-10);
    CHECK(sector_errors.boundary_flux_max < 1e-10);

    auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
    const auto errors = pointwise_identity_suite(*g, 200, 200, 3);
    CHECK(errors.div_f1_max < 1e-8);
    CHECK(errors.div_f2_max < 1e-8);
    CHECK(errors.boundary_flux_max < 1e-7);
}

TEST_CASE("flow expansion: sectors are stationary") {
    auto cone = cap_cone(1.2);
    const auto rule = make_rule(*cone, 48, 16, 64);
    const auto r = flow_expansion_check(spherical_sector(cone, 1.0), rule, 1e-3);
    CHECK(std::abs(r.slope_lhs) < 1e-8);
    CHECK(std::abs(r.slope_rhs) < 1e-8);
    CHECK(r.claim_abs_error < 1e-8);
}

TEST_CASE("flow expansion: slope and conormal-velocity claim on bump graphs") {
    auto cone = cap_cone(1.2);
    auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
    const auto rule = make_rule(*cone, 96, 32, 128);
    const auto r = flow_expansion_check(g, rule, 1e-3);
    CHECK(std::abs(r.slope_rhs) > 1e-4);
    CHECK(r.slope_rel_error < 1e-3);
    CHECK(r.claim_scale > 1e-3);
    CHECK(r.claim_rel_error < 1e-4);
}

TEST_CASE("rigidity report on sectors") {
    auto cone = cap_cone(1.2);
    const auto rule = make_rule(*cone, 96, 32, 192);
    const auto rep = rigidity_report(*spherical_sector(cone, 2.0), rule);
    CHECK(std::abs(rep.H_bar - 0.5) < 1e-10);
    CHECK(rep.cmc_deviation < 1e-10);
    CHECK(std::abs(rep.sign_condition) < 1e-10);
    CHECK(std::abs(rep.umbilicity_defect_integral) < 1e-10);
    CHECK(rep.umbilicity_defect_pointwise < 1e-10);
    CHECK(rep.starshaped);
    CHECK(rep.chain_identity_error < 1e-12);
}

TEST_CASE("rigidity diagnostics on perturbed graphs") {
    auto cone = cap_cone(1.2);
    auto g = build_polar_graph(cone, RadialProfile::axisym(3, 1.0, 0.1, 1.2));
    const auto rule = make_rule(*cone, 96, 32, 192);
    const auto rep = rigidity_report(*g, rule);
    CHECK(rep.cmc_deviation > 1e-3);  // hypotheses of the rigidity theorem fail
    CHECK(rep.umbilicity_defect_pointwise > 1e-3);
    CHECK(rep.chain_identity_error < 1e-12);
    CHECK(rep.starshaped);

    // convex cone + starshaped orthogonal surface: sign condition >= 0
    auto b = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
    const auto repb = rigidity_report(*b, rule);
    CHECK(repb.sign_condition >= -1e-10);
}

TEST_CASE("N = 2: mink1 and the vanishing mink2 boundary term") {
    auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::wedge(1.0));
    auto arc = build_polar_graph(cone, RadialProfile::axisym(2, 1.0, 0.1, 0.5));
    const auto rule = make_rule(*cone, 64, 8, 2);
    CHECK(std::abs(mink1_report(*arc, rule).residual) < 1e-12);
    CHECK(mink2_boundary_term(*arc, rule, true) == 0.0);
    CHECK_THROWS_AS((void)mink2_report(*arc, rule), DomainError);
}

}  // TEST_SUITE
