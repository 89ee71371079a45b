#include "conegeo/identities.hpp"

#include <random>

#include "conegeo/parallel.hpp"

namespace conegeo {

JetVec field_F1(const SurfaceJets& P) {
    JetVec F(P.N);
    for (int a = 0; a < P.N; ++a) F[a] = P.x[a] - P.nu[a] * P.support;
    return F;
}

JetVec field_F2(const SurfaceJets& P) {
    const JetVec F1 = field_F1(P);
    // Tangential coordinates of F1: a_i = sum_j g^{ij} <F1, dx_j>.
    std::array<Jet, 2> a;
    for (int i = 0; i < P.M; ++i) {
        a[i] = Jet::constant(0.0);
        for (int j = 0; j < P.M; ++j) a[i] += P.ginv[i][j] * dot(F1, P.dx[j]);
    }
    JetVec F(P.N);
    for (int c = 0; c < P.N; ++c) {
        F[c] = P.H * F1[c] * double(P.N - 1);
        for (int i = 0; i < P.M; ++i) F[c] -= a[i] * P.nu[c].derivative(i);
    }
    return F;
}

namespace {

void require_tangent(const JetVec& F, const SurfaceJets& P, const char* name) {
    double fn = 0.0, nn = 0.0;
    for (int a = 0; a < P.N; ++a) {
        fn += F[a].value() * P.nu[a].value();
        nn += F[a].value() * F[a].value();
    }
    if (std::abs(fn) > 1e-8 * (1.0 + std::sqrt(nn)))
        throw Error(std::string(name) + ": field is not tangent to the surface");
}

std::string resolution_tag(const QuadratureRule& r) {
    return std::to_string(r.n_phi) + "x" + std::to_string(r.n_s) + "/" + std::to_string(r.n_b);
}

}  // namespace

IdentityReport mink1_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                            int threads) {
    IdentityReport rep;
    rep.name = "mink1";
    rep.n_phi = rule.n_phi;
    rep.n_s = rule.n_s;
    rep.n_b = rule.n_b;
    rep.table_ref = resolution_tag(rule);

    std::function<double(const SurfaceJets&)> f = [](const SurfaceJets& P) {
        return 1.0 - P.H.value() * P.support.value();
    };
    rep.lhs = integrate_surface_multi(surface, rule, std::span(&f, 1), threads)[0];
    rep.rhs = 0.0;
    rep.residual = rep.lhs;

    std::function<double(const BoundaryData&)> flux = [&](const BoundaryData& bd) {
        const SurfaceJets P = surface.jets(bd.u);
        const JetVec F1 = field_F1(P);
        double v = 0.0;
        for (int a = 0; a < P.N; ++a) v += F1[a].value() * bd.conormal[a];
        return v;
    };
    const double bflux =
        integrate_boundary_multi(surface, rule, std::span(&flux, 1), threads)[0];
    rep.extras["boundary_flux"] = bflux / double(surface.ambient_dim() - 1);
    rep.extras["orthogonality_residual"] = surface.orthogonality_residual();
    return rep;
}

double mink2_boundary_term(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                           bool use_nu_T, int threads) {
    std::function<double(const BoundaryData&)> f = [&](const BoundaryData& bd) {
        const VectorXd& v = use_nu_T ? bd.nu_T : bd.nu;
        return surface.cone().II(bd.x, v, v) * bd.support;
    };
    return integrate_boundary_multi(surface, rule, std::span(&f, 1), threads)[0];
}

IdentityReport mink2_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                            int threads) {
    const int N = surface.ambient_dim();
    if (N < 3) throw DomainError("the second Minkowski identity needs N >= 3");

    IdentityReport rep;
    rep.name = "mink2";
    rep.n_phi = rule.n_phi;
    rep.n_s = rule.n_s;
    rep.n_b = rule.n_b;
    rep.table_ref = resolution_tag(rule);

    std::function<double(const SurfaceJets&)> f = [](const SurfaceJets& P) {
        return P.H.value() - P.sigma2.value() * P.support.value();
    };
    rep.lhs = integrate_surface_multi(surface, rule, std::span(&f, 1), threads)[0];

    const double scale = -1.0 / double((N - 1) * (N - 2));
    const double b_nuT = mink2_boundary_term(surface, rule, true, threads);
    const double b_nu = mink2_boundary_term(surface, rule, false, threads);
    rep.rhs = scale * b_nuT;
    rep.residual = rep.lhs - rep.rhs;
    rep.extras["rhs_nu_form"] = scale * b_nu;
    // Relative gap with a roundoff floor: both boundary forms vanish
    // identically on surfaces whose normal is radial along dGamma.
    const double denom = std::max(std::abs(b_nuT), std::abs(b_nu));
    rep.extras["forms_rel_gap"] = (denom > 1e-12) ? std::abs(b_nuT - b_nu) / denom : 0.0;
    return rep;
}

IdentityReport divergence_theorem_check(const FreeBoundarySurface& surface,
                                        const QuadratureRule& rule,
                                        const std::function<JetVec(const SurfaceJets&)>& field,
                                        const std::string& name, int threads) {
    IdentityReport rep;
    rep.name = name;
    rep.n_phi = rule.n_phi;
    rep.n_s = rule.n_s;
    rep.n_b = rule.n_b;
    rep.table_ref = resolution_tag(rule);

    std::function<double(const SurfaceJets&)> div = [&](const SurfaceJets& P) {
        const JetVec F = field(P);
        require_tangent(F, P, name.c_str());
        return tangential_divergence(F, P);
    };
    rep.lhs = integrate_surface_multi(surface, rule, std::span(&div, 1), threads)[0];

    std::function<double(const BoundaryData&)> flux = [&](const BoundaryData& bd) {
        const SurfaceJets P = surface.jets(bd.u);
        const JetVec F = field(P);
        double v = 0.0;
        for (int a = 0; a < P.N; ++a) v += F[a].value() * bd.conormal[a];
        return v;
    };
    rep.rhs = integrate_boundary_multi(surface, rule, std::span(&flux, 1), threads)[0];
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

IdentityReport divergence_theorem_check_F1(const FreeBoundarySurface& surface,
                                           const QuadratureRule& rule, int threads) {
    return divergence_theorem_check(surface, rule, field_F1, "divergence_F1", threads);
}

IdentityReport divergence_theorem_check_F2(const FreeBoundarySurface& surface,
                                           const QuadratureRule& rule, int threads) {
    return divergence_theorem_check(surface, rule, field_F2, "divergence_F2", threads);
}

PointwiseIdentityErrors pointwise_identity_suite(const FreeBoundarySurface& surface,
                                                 int interior_nodes, int boundary_nodes,
                                                 uint64_t seed) {
    const int N = surface.ambient_dim();
    PointwiseIdentityErrors out;
    out.interior_nodes = interior_nodes;
    out.boundary_nodes = boundary_nodes;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uxi(0.05, 0.995), uphi(0.0, 2.0 * M_PI);

    const auto& dom = surface.cone().domain();
    for (int k = 0; k < interior_nodes; ++k) {
        VectorXd u;
        if (N == 3) {
            const double phi = uphi(rng);
            const double s = uxi(rng) * dom.b(phi);
            u = Vector2d(s * std::cos(phi), s * std::sin(phi));
        } else {
            u = VectorXd::Constant(1, (2.0 * uxi(rng) - 1.0) * dom.alpha);
        }
        const SurfaceJets P = surface.jets(u);
        const double supp = P.support.value(), H = P.H.value();
        const double d1 = tangential_divergence(field_F1(P), P);
        out.div_f1_max = std::max(out.div_f1_max, std::abs(d1 - (N - 1) * (1.0 - H * supp)));
        const double d2 = tangential_divergence(field_F2(P), P);
        const double rhs2 =
            (N >= 3) ? (N - 1) * (N - 2) * (H - P.sigma2.value() * supp) : 0.0;
        out.div_f2_max = std::max(out.div_f2_max, std::abs(d2 - rhs2));
    }

    for (int k = 0; k < boundary_nodes; ++k) {
        const double phi = (N == 3) ? uphi(rng) : double(k % 2);
        const BoundaryData bd = surface.boundary_data(phi);
        if (!bd.cone_normal) throw DomainError("boundary flux identity needs an attached boundary");
        const SurfaceJets P = surface.jets(bd.u);
        const JetVec F2 = field_F2(P);
        double flux = 0.0;
        for (int a = 0; a < N; ++a) flux += F2[a].value() * (*bd.cone_normal)[a];
        const double ii_nn = surface.cone().II(bd.x, bd.nu, bd.nu);
        out.boundary_flux_max =
            std::max(out.boundary_flux_max, std::abs(flux + bd.support * ii_nn));
    }
    return out;
}

FlowExpansionResult flow_expansion_check(std::shared_ptr<const FreeBoundarySurface> surface,
                                         const QuadratureRule& rule, double t_step, int threads) {
    const int N = surface->ambient_dim();
    FlowExpansionResult out;
    out.t_step = t_step;

    std::function<double(const SurfaceJets&)> mink2_integrand = [](const SurfaceJets& P) {
        return P.H.value() - P.sigma2.value() * P.support.value();
    };
    out.slope_rhs = (N >= 3) ? (N - 1) * (N - 2) *
                                   integrate_surface_multi(*surface, rule,
                                                           std::span(&mink2_integrand, 1),
                                                           threads)[0]
                             : 0.0;

    // A(t) = (N-1) int_{Gamma_t} (1 - H_t <x_t, nu_t>).
    auto A = [&](double t) {
        const auto off = normal_offset(surface, t);
        std::function<double(const SurfaceJets&)> f = [](const SurfaceJets& P) {
            return 1.0 - P.H.value() * P.support.value();
        };
        return (N - 1) * integrate_surface_multi(*off, rule, std::span(&f, 1), threads)[0];
    };
    const double h = t_step;
    const double D1 = (A(h) - A(-h)) / (2.0 * h);
    const double D2 = (A(h / 2.0) - A(-h / 2.0)) / h;
    out.slope_lhs = (4.0 * D2 - D1) / 3.0;
    out.slope_abs_error = std::abs(out.slope_lhs - out.slope_rhs);
    out.slope_rel_error = out.slope_abs_error / std::max(std::abs(out.slope_rhs), 1e-300);

    // Conormal velocity along the boundary: centered differences of the
    // intrinsic conormal of Gamma_{+-t} at matching boundary parameters.
    const auto op = normal_offset(surface, h), om = normal_offset(surface, -h);
    const auto op2 = normal_offset(surface, h / 2.0), om2 = normal_offset(surface, -h / 2.0);
    const std::size_t nb = std::min<std::size_t>(rule.boundary.size(), 128);
    std::vector<double> errs(nb), scales(nb);
    parallel_for(nb, threads, [&](std::size_t i) {
        const double phi = rule.boundary[i * rule.boundary.size() / nb].phi;
        const BoundaryData base = surface->boundary_data(phi);
        const VectorXd n1 = op->boundary_data(phi).conormal;
        const VectorXd m1 = om->boundary_data(phi).conormal;
        const VectorXd n2 = op2->boundary_data(phi).conormal;
        const VectorXd m2 = om2->boundary_data(phi).conormal;
        const VectorXd d1 = (n1 - m1) / (2.0 * h);
        const VectorXd d2 = (n2 - m2) / h;
        const VectorXd dndt = (4.0 * d2 - d1) / 3.0;
        const double claim = -base.support * surface->cone().II(base.x, base.nu, base.nu);
        errs[i] = std::abs(base.x.dot(dndt) - claim);
        scales[i] = std::abs(claim);
    });
    for (std::size_t i = 0; i < nb; ++i) {
        out.claim_abs_error = std::max(out.claim_abs_error, errs[i]);
        out.claim_scale = std::max(out.claim_scale, scales[i]);
    }
    out.claim_rel_error = out.claim_abs_error / std::max(out.claim_scale, 1e-300);
    return out;
}

RigidityReport rigidity_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                               int threads) {
    const int N = surface.ambient_dim();
    RigidityReport rep;

    std::array<std::function<double(const SurfaceJets&)>, 2> base = {
        [](const SurfaceJets&) { return 1.0; },
        [](const SurfaceJets& P) { return P.support.value(); },
    };
    const auto v0 = integrate_surface_multi(surface, rule, std::span(base.data(), 2), threads);
    rep.area = v0[0];
    const double supp_int = v0[1];
    rep.H_bar = rep.area / supp_int;
    const double Hb = rep.H_bar;

    // One sweep for the sigma2-weighted integral and the pointwise maxima.
    const std::size_t n = rule.interior.size();
    std::vector<double> s2supp(n), hdev(n), udef(n), supmin(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const SurfaceJets P = surface.jets(rule.interior[i].u);
        const double wa = rule.interior[i].w * P.area_weight.value();
        const double H = P.H.value(), supp = P.support.value();
        const double s2 = (N >= 3) ? P.sigma2.value() : 0.0;
        s2supp[i] = wa * s2 * supp;
        hdev[i] = std::abs(H - Hb);
        // ||S - H_bar I||_F in a g-orthonormal frame; the deviation matrix is
        // formed first so sectors come out at roundoff, not sqrt(roundoff).
        MatrixXd dev(P.M, P.M);
        for (int a = 0; a < P.M; ++a)
            for (int b = 0; b < P.M; ++b)
                dev(a, b) = P.shape[a][b].value() - (a == b ? Hb : 0.0);
        udef[i] = std::sqrt(std::max(0.0, (dev * dev).trace()));
        supmin[i] = supp;
    });
    NeumaierSum sum_s2supp;
    rep.min_support = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        sum_s2supp.add(s2supp[i]);
        rep.cmc_deviation = std::max(rep.cmc_deviation, hdev[i]);
        rep.umbilicity_defect_pointwise = std::max(rep.umbilicity_defect_pointwise, udef[i]);
        rep.min_support = std::min(rep.min_support, supmin[i]);
    }
    const double B = sum_s2supp.total();  // int sigma2 <x,nu>

    rep.umbilicity_defect_integral = Hb * Hb * supp_int - B;
    // Exact rearrangement through both Minkowski structures:
    // int (Hb^2 - s2)<x,nu> = int (Hb - s2<x,nu>) - Hb int (1 - Hb <x,nu>).
    const double via_chain =
        (Hb * rep.area - B) - Hb * (rep.area - Hb * supp_int);
    rep.chain_identity_error = std::abs(rep.umbilicity_defect_integral - via_chain);

    rep.sign_condition = mink2_boundary_term(surface, rule, true, threads);
    rep.starshaped = rep.min_support > 0.0;
    return rep;
}

}  // namespace conegeo
