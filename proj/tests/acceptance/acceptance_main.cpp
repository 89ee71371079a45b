// Acceptance suite: every criterion prints one PASS/FAIL line and the binary
// exits nonzero if any fail. Tolerances are pinned in code, next to each
// check. Each criterion runs in well under a minute on a laptop.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include <conegeo/identities.hpp>
#include <conegeo/runner.hpp>
#include <conegeo/spectral.hpp>
#include <conegeo/stability.hpp>

#include "oracles.hpp"

using namespace conegeo;

namespace {

int g_failures = 0;

struct Criterion {
    std::string label;
    std::vector<std::string> notes;
    bool ok = true;

    explicit Criterion(std::string l) : label(std::move(l)) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void finish(double seconds) {
        std::printf("[%s] %s (%.1fs)\n", ok ? "PASS" : "FAIL", label.c_str(), seconds);
        for (const auto& n : notes) std::printf("       - %s\n", n.c_str());
        if (!ok) ++g_failures;
    }
};

template <typename Fn>
void run(const std::string& label, Fn&& fn) {
    Criterion c(label);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.finish(dt);
}

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.3e", v);
    return b;
}

std::shared_ptr<const ConeGeometry> cap(double alpha) {
    return std::make_shared<ConeGeometry>(SphericalDomainSpec::cap(alpha));
}

// Randomized profile family for criterion 1: orthogonal (axisym, bump) and
// non-orthogonal (linear_violation) members with seeded parameters.
RadialProfile random_profile(int index, double alpha, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ueps(0.03, 0.1), uR(0.8, 1.2);
    const double eps = ueps(rng), R = uR(rng);
    switch (index % 3) {
        case 0: return RadialProfile::axisym(3, R, eps, alpha);
        case 1: return RadialProfile::bump(3, R, eps, 2 + index % 2, alpha);
        default: return RadialProfile::linear_violation(3, R, eps, alpha);
    }
}

}  // namespace

int main() {
    const int threads = 4;

    run("criterion 1: generalized divergence theorem on randomized profiles", [&](Criterion& c) {
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 5; ++i) {
            const double alpha = (i % 2 == 0) ? 1.2 : 2.0;
            auto cone = cap(alpha);
            auto surf = build_polar_graph(cone, random_profile(i, alpha, rng));
            const auto base = make_rule(*cone, 256, 64, 512);
            const auto fine = make_rule(*cone, 512, 128, 1024);
            const double r1 = std::abs(divergence_theorem_check_F1(*surf, base, threads).residual);
            const double r1f = std::abs(divergence_theorem_check_F1(*surf, fine, threads).residual);
            c.require(r1 < 1e-7, "F1 residual " + fmt(r1) + " at 256x64, profile " +
                                      surf->profile().family_name());
            if (surf->profile().pole_smooth()) {
                // F2 carries a factor of H and is unbounded at the tip of the
                // pole-nonsmooth (linear) profiles; the theorem needs C^1 fields.
                const double r2 =
                    std::abs(divergence_theorem_check_F2(*surf, base, threads).residual);
                c.require(r2 < 1e-7, "F2 residual " + fmt(r2) + " at 256x64, profile " +
                                          surf->profile().family_name());
            }
            // decreasing under one refinement, up to the roundoff floor
            c.require(r1f <= r1 || r1f < 1e-12,
                      "refinement did not decrease residual: " + fmt(r1) + " -> " + fmt(r1f));
        }
    });

    run("criterion 2: first Minkowski formula", [&](Criterion& c) {
        auto cone = cap(1.2);
        const auto rule = make_rule(*cone, 256, 64, 512);
        const double rs = std::abs(mink1_report(*spherical_sector(cone, 1.0), rule, threads).residual);
        c.require(rs < 1e-12, "sector residual " + fmt(rs));
        for (const auto& prof : {RadialProfile::axisym(3, 1.0, 0.1, 1.2),
                                 RadialProfile::bump(3, 1.0, 0.1, 2, 1.2)}) {
            auto g = build_polar_graph(cone, prof);
            const double r = std::abs(mink1_report(*g, rule, threads).residual);
            c.require(r < 1e-8, g->profile().family_name() + " residual " + fmt(r));
        }
        auto bad = build_polar_graph(cone, RadialProfile::linear_violation(3, 1.0, 0.1, 1.2));
        const auto rep = mink1_report(*bad, rule, threads);
        c.require(std::abs(rep.residual - rep.extras.at("boundary_flux")) < 1e-7,
                  "negative control: residual " + fmt(rep.residual) + " vs boundary term " +
                      fmt(rep.extras.at("boundary_flux")));
    });

    run("criterion 3: second Minkowski identity with convergence order >= 4", [&](Criterion& c) {
        for (const double alpha : {1.2, 2.0}) {
            auto cone = cap(alpha);
            // as stated: the axisymmetric profile (boundary term degenerates
            // to zero there: normal is radial along dGamma), plus the
            // non-axisymmetric bump profile which exercises the correction.
            for (const auto& prof : {RadialProfile::axisym(3, 1.0, 0.1, alpha),
                                     RadialProfile::bump(3, 1.0, 0.1, 2, alpha)}) {
                auto g = build_polar_graph(cone, prof);
                const auto rule = make_rule(*cone, 256, 64, 512);
                const auto rep = mink2_report(*g, rule, threads);
                const std::string tag = g->profile().family_name() + " alpha=" + fmt(alpha);
                c.require(std::abs(rep.residual) < 1e-6,
                          tag + ": |lhs-rhs| " + fmt(std::abs(rep.residual)));
                c.require(rep.extras.at("forms_rel_gap") < 1e-9,
                          tag + ": nu_T/nu forms gap " + fmt(rep.extras.at("forms_rel_gap")));

                const auto levels = make_rule_levels(*cone, 32, 12, 64, 3);
                std::vector<double> res;
                for (const auto& r : levels)
                    res.push_back(std::abs(mink2_report(*g, r, threads).residual));
                const double rmax = std::max({res[0], res[1], res[2]});
                if (rmax < 1e-12) continue;  // already at the roundoff floor
                c.require(res[2] < res[1] && res[1] < res[0], tag + ": residuals not decreasing");
                const double order = std::log2(res[0] / res[1]);
                c.require(order >= 4.0, tag + ": estimated order " + fmt(order));
            }
        }
    });

    run("criterion 4: correction-term demonstration", [&](Criterion& c) {
        auto cone = cap(2.0);
        auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 2.0));
        const auto levels = make_rule_levels(*cone, 64, 24, 128, 3);
        const auto rep = mink2_report(*g, levels[2], threads);
        c.require(std::abs(rep.rhs) > 10.0 * std::abs(rep.residual),
                  "correction " + fmt(std::abs(rep.rhs)) + " vs 10x residual " +
                      fmt(10.0 * std::abs(rep.residual)));

        // correction -> 0 as eps -> 0, strictly increasing along the sweep
        const auto rule = make_rule(*cone, 128, 48, 256);
        double prev = -1.0;
        for (const double eps : {0.0, 0.025, 0.05, 0.1}) {
            auto ge = build_polar_graph(cone, RadialProfile::bump(3, 1.0, eps, 2, 2.0));
            const double mag = std::abs(mink2_report(*ge, rule, threads).rhs);
            c.require(mag > prev, "sweep not strictly increasing at eps=" + fmt(eps));
            if (eps == 0.0) c.require(mag < 1e-12, "eps=0 correction " + fmt(mag));
            prev = mag;
        }

        // convex cap: the correction term is non-positive
        auto cone12 = cap(1.2);
        auto g12 = build_polar_graph(cone12, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
        const auto rep12 = mink2_report(*g12, make_rule(*cone12, 128, 48, 256), threads);
        c.require(rep12.rhs <= 1e-10, "convex-cone rhs " + fmt(rep12.rhs) + " not <= 1e-10");
    });

    run("criterion 5: pointwise identities over randomized nodes", [&](Criterion& c) {
        auto cone = cap(1.2);
        for (const auto& prof : {RadialProfile::axisym(3, 1.0, 0.1, 1.2),
                                 RadialProfile::bump(3, 1.0, 0.1, 3, 1.2)}) {
            auto g = build_polar_graph(cone, prof);
            const auto pw = pointwise_identity_suite(*g, 200, 200, 99);
            const std::string tag = g->profile().family_name();
            c.require(pw.div_f1_max < 1e-7, tag + ": div F1 error " + fmt(pw.div_f1_max));
            c.require(pw.div_f2_max < 1e-7, tag + ": div F2 error " + fmt(pw.div_f2_max));
            c.require(pw.boundary_flux_max < 1e-7,
                      tag + ": boundary flux error " + fmt(pw.boundary_flux_max));
        }
    });

    run("criterion 6: normal-flow expansion and conormal velocity", [&](Criterion& c) {
        auto cone = cap(1.2);
        const auto rule = make_rule(*cone, 128, 48, 256);
        const auto fs = flow_expansion_check(spherical_sector(cone, 1.0), rule, 1e-3, threads);
        c.require(std::abs(fs.slope_lhs) < 1e-8, "sector slope " + fmt(fs.slope_lhs));
        c.require(fs.claim_abs_error < 1e-8, "sector claim error " + fmt(fs.claim_abs_error));

        auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
        const auto fg = flow_expansion_check(g, rule, 1e-3, threads);
        c.require(fg.slope_rel_error < 1e-3, "slope relative error " + fmt(fg.slope_rel_error));
        c.require(fg.claim_rel_error < 1e-4, "claim relative error " + fmt(fg.claim_rel_error));
    });

    run("criterion 7: rigidity chain and sign condition", [&](Criterion& c) {
        auto cone = cap(1.2);
        const auto rule = make_rule(*cone, 256, 64, 512);
        const auto rs = rigidity_report(*spherical_sector(cone, 2.0), rule, threads);
        c.require(std::abs(rs.H_bar - 0.5) < 1e-10, "sector H_bar " + fmt(rs.H_bar));
        c.require(rs.cmc_deviation < 1e-10, "sector CMC deviation " + fmt(rs.cmc_deviation));
        c.require(rs.umbilicity_defect_pointwise < 1e-10,
                  "sector umbilicity defect " + fmt(rs.umbilicity_defect_pointwise));
        c.require(std::abs(rs.umbilicity_defect_integral) < 1e-10,
                  "sector integral defect " + fmt(rs.umbilicity_defect_integral));
        c.require(rs.chain_identity_error < 1e-12, "chain error " + fmt(rs.chain_identity_error));

        for (const auto& prof : {RadialProfile::axisym(3, 1.0, 0.1, 1.2),
                                 RadialProfile::bump(3, 1.0, 0.1, 2, 1.2)}) {
            auto g = build_polar_graph(cone, prof);
            const auto r = rigidity_report(*g, rule, threads);
            const std::string tag = g->profile().family_name();
            c.require(r.chain_identity_error < 1e-12, tag + ": chain " + fmt(r.chain_identity_error));
            c.require(r.starshaped, tag + ": not starshaped");
            c.require(r.sign_condition >= -1e-10,
                      tag + ": sign condition " + fmt(r.sign_condition) + " in a convex cone");
        }
    });

    run("criterion 8: spectral validation", [&](Criterion& c) {
        // flat unit square
        VectorXd o = VectorXd::Zero(3), ax = VectorXd::Unit(3, 0), ay = VectorXd::Unit(3, 1);
        PlanarPatchChart square(o, ax, ay);
        const auto sq = lambda1_neumann(square, build_rect_mesh(1.0, 1.0, 64, 64));
        c.require(std::abs(sq.lambda1 - M_PI * M_PI) / (M_PI * M_PI) < 0.01,
                  "square lambda1 " + fmt(sq.lambda1));

        // hemisphere: lambda1 -> 2 at order about 2
        auto hemi_cone = cap(M_PI / 2.0);
        auto hemi = spherical_sector(hemi_cone, 1.0);
        std::vector<SurfaceMesh> meshes;
        for (const int n_r : {8, 16, 32}) meshes.push_back(build_polar_mesh(*hemi_cone, n_r));
        const auto hs = lambda1_study(hemi->chart(), meshes);
        c.require(std::abs(hs.lambda1 - 2.0) / 2.0 < 0.01, "hemisphere lambda1 " + fmt(hs.lambda1));
        c.require(hs.observed_order > 1.5 && hs.observed_order < 2.5,
                  "hemisphere observed order " + fmt(hs.observed_order));

        // scaling law on a cap sector
        auto cone = cap(1.2);
        const auto mesh = build_polar_mesh(*cone, 16);
        const double l1 = lambda1_neumann(*spherical_sector(cone, 1.0), mesh).lambda1;
        const double l2 = lambda1_neumann(*spherical_sector(cone, 2.0), mesh).lambda1;
        c.require(std::abs(l2 - l1 / 4.0) < 1e-8 * std::max(1.0, l1),
                  "scaling law gap " + fmt(std::abs(l2 - l1 / 4.0)));

        // convex caps: lambda1 >= N - 1 = 2 (within 2 percent FEM slack)
        for (const double alpha : {0.9, 1.2, M_PI / 2.0}) {
            auto ccone = cap(alpha);
            std::vector<SurfaceMesh> ms;
            for (const int n_r : {8, 16, 32}) ms.push_back(build_polar_mesh(*ccone, n_r));
            const auto res = lambda1_study(spherical_sector(ccone, 1.0)->chart(), ms);
            c.require(res.lambda1 >= 2.0 - 0.02,
                      "cap alpha=" + fmt(alpha) + " lambda1 " + fmt(res.lambda1));
        }
    });

    run("criterion 9: stability identities", [&](Criterion& c) {
        for (const double alpha : {1.2, 2.0}) {
            auto cone = cap(alpha);
            auto s = spherical_sector(cone, 1.0);
            const auto rule = make_rule(*cone, 128, 48, 256);
            const auto rep = stability_report(*s, rule, 2.0, 0.0, 1e-8, threads);
            const std::string tag = "alpha=" + fmt(alpha);
            c.require(std::abs(rep.rel_lhs) < 1e-9, tag + ": rel_lhs " + fmt(rep.rel_lhs));
            c.require(std::abs(rep.rel_rhs) < 1e-9, tag + ": rel_rhs " + fmt(rep.rel_rhs));
            c.require(std::abs(rep.Q_form) < 1e-9, tag + ": Q form " + fmt(rep.Q_form));
        }

        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> dist(-1, 1);
        VectorXd w(3);
        w << dist(rng), dist(rng), dist(rng);
        const double reilly =
            std::max({reilly_average_check(VectorXd::Zero(3)),
                      reilly_average_check(VectorXd::Unit(3, 0)), reilly_average_check(w)});
        c.require(reilly < 1e-12, "Reilly average error " + fmt(reilly));

        auto cone = cap(1.2);
        auto g = build_polar_graph(cone, RadialProfile::bump(3, 1.0, 0.1, 2, 1.2));
        const auto rule = make_rule(*cone, 96, 32, 192);
        const double Hb = rigidity_report(*g, rule, threads).H_bar;
        for (const double cc : {0.0, Hb, 1.0}) {
            const auto fr = frame_energy_check(*g, cc, 128, 7);
            c.require(fr.max_error < 1e-7,
                      "frame energy error " + fmt(fr.max_error) + " at c=" + fmt(cc));
        }
    });

    run("criterion 10: N = 2 wedge degeneracy", [&](Criterion& c) {
        auto cone = std::make_shared<ConeGeometry>(SphericalDomainSpec::wedge(1.0));
        auto arc = build_polar_graph(cone, RadialProfile::axisym(2, 1.0, 0.1, 0.5));
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> ut(0.3, 2.0), uc(-1, 1);
        double max_ii = 0.0;
        for (int k = 0; k < 50; ++k) {
            const int side = k % 2;
            const VectorXd x = ut(rng) * cone->boundary_sphere_point(0.0, side);
            VectorXd v(2), w(2);
            v << uc(rng), uc(rng);
            w << uc(rng), uc(rng);
            max_ii = std::max(max_ii, std::abs(cone->II(x, v, w)));
        }
        c.require(max_ii < 1e-12, "wedge II magnitude " + fmt(max_ii));
        const auto rule = make_rule(*cone, 64, 8, 2);
        const double bterm = mink2_boundary_term(*arc, rule, true);
        c.require(bterm == 0.0, "Mink2 boundary term " + fmt(bterm) + " not exactly zero");
    });

    run("criterion 11: byte-identical outputs for identical config and seed", [&](Criterion& c) {
        const char* cfg_text = R"({
          "dimension": 3,
          "cone": {"cap": {"alpha": 1.2}},
          "profile": {"bump": {"R": 1.0, "eps": 0.1, "k": 2}},
          "quadrature": {"n_phi": 48, "n_s": 16, "n_b": 96, "levels": 2},
          "seed": 12345
        })";
        const auto cfg = parse_config_json(cfg_text);
        const auto t = std::filesystem::temp_directory_path();
        const auto d1 = t / "conegeo_acc_det1", d2 = t / "conegeo_acc_det2";
        std::filesystem::remove_all(d1);
        std::filesystem::remove_all(d2);
        const auto b1 = run_verify(cfg, d1);
        const auto b2 = run_verify(cfg, d2);
        c.require(b1.pass && b2.pass, "verify runs did not pass");
        for (const char* name : {"verify.json", "identities.csv"}) {
            std::ifstream f1(d1 / name, std::ios::binary), f2(d2 / name, std::ios::binary);
            const std::string s1((std::istreambuf_iterator<char>(f1)), {});
            const std::string s2((std::istreambuf_iterator<char>(f2)), {});
            c.require(!s1.empty() && s1 == s2, std::string(name) + " differs between runs");
        }
    });

    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
