#include "conegeo/stability.hpp"

#include <random>

#include "conegeo/parallel.hpp"

namespace conegeo {

StabilityReport stability_report(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                                 double lambda1, double lambda1_uncertainty, double cmc_tol,
                                 int threads) {
    const int N = surface.ambient_dim();
    StabilityReport rep;
    rep.lambda1 = lambda1;
    rep.lambda1_uncertainty = lambda1_uncertainty;

    std::array<std::function<double(const SurfaceJets&)>, 2> base = {
        [](const SurfaceJets&) { return 1.0; },
        [](const SurfaceJets& P) { return P.support.value(); },
    };
    const auto v0 = integrate_surface_multi(surface, rule, std::span(base.data(), 2), threads);
    const double area = v0[0], supp_int = v0[1];
    rep.H_bar = area / supp_int;
    const double Hb = rep.H_bar;
    rep.u_bar_integral = area - Hb * supp_int;

    // Sweep 1: frame term, F integrals, CMC deviation.
    const std::size_t n = rule.interior.size();
    std::vector<double> frame_w(n), F_w(n * 3), hdev(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const SurfaceJets P = surface.jets(rule.interior[i].u);
        const double wa = rule.interior[i].w * P.area_weight.value();
        const double s2 = (N >= 3) ? P.sigma2.value() : 0.0;
        frame_w[i] = wa * (Hb * Hb - s2);
        for (int a = 0; a < N; ++a)
            F_w[i * 3 + a] = wa * (Hb * P.x[a].value() - P.nu[a].value());
        hdev[i] = std::abs(P.H.value() - Hb);
    });
    NeumaierSum frame_sum;
    std::array<NeumaierSum, 3> F_sum;
    for (std::size_t i = 0; i < n; ++i) {
        frame_sum.add(frame_w[i]);
        for (int a = 0; a < N; ++a) F_sum[a].add(F_w[i * 3 + a]);
        rep.cmc_deviation = std::max(rep.cmc_deviation, hdev[i]);
    }
    rep.frame_term = double((N - 1) * (N - 2)) * frame_sum.total();
    rep.F0.resize(N);
    for (int a = 0; a < N; ++a) rep.F0[a] = F_sum[a].total() / area;
    rep.label = (rep.cmc_deviation < cmc_tol) ? "theorem-applicable" : "diagnostic";

    // Sweep 2: int |F - F0|^2.
    std::vector<double> dev_w(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const SurfaceJets P = surface.jets(rule.interior[i].u);
        const double wa = rule.interior[i].w * P.area_weight.value();
        double q = 0.0;
        for (int a = 0; a < N; ++a) {
            const double d = Hb * P.x[a].value() - P.nu[a].value() - rep.F0[a];
            q += d * d;
        }
        dev_w[i] = wa * q;
    });
    NeumaierSum dev_sum;
    for (std::size_t i = 0; i < n; ++i) dev_sum.add(dev_w[i]);
    rep.eigen_term = dev_sum.total();

    // Boundary integrals of II^Sigma in both forms (equal by flatness).
    std::array<std::function<double(const BoundaryData&)>, 2> bints = {
        [&](const BoundaryData& bd) { return surface.cone().II(bd.x, bd.nu, bd.nu); },
        [&](const BoundaryData& bd) { return surface.cone().II(bd.x, bd.nu_T, bd.nu_T); },
    };
    const auto bv = integrate_boundary_multi(surface, rule, std::span(bints.data(), 2), threads);
    const double B_nu = bv[0], B_nuT = bv[1];

    rep.Q_form = -rep.frame_term - B_nu;
    rep.rel_lhs = -B_nuT;
    rep.rel_rhs = lambda1 * rep.eigen_term;
    rep.margin = rep.rel_lhs - rep.rel_rhs;
    rep.margin_low = rep.rel_lhs - lambda1 * (1.0 + lambda1_uncertainty) * rep.eigen_term;
    rep.margin_high = rep.rel_lhs - lambda1 * (1.0 - lambda1_uncertainty) * rep.eigen_term;
    rep.flatness_correction = B_nu - B_nuT;
    rep.chain_error = std::abs(
        rep.margin - (rep.Q_form + rep.frame_term + rep.flatness_correction - rep.rel_rhs));
    return rep;
}

double reilly_average_check(const VectorXd& w, int n_nodes) {
    const int N = static_cast<int>(w.size());
    NeumaierSum sum;
    if (N == 2) {
        const int n = std::max(4, n_nodes);
        for (int i = 0; i < n; ++i) {
            const double a = 2.0 * M_PI * i / n;
            const double d = w[0] * std::cos(a) + w[1] * std::sin(a);
            sum.add(d * d / n);
        }
        return std::abs(sum.total() - w.squaredNorm() / 2.0);
    }
    if (N != 3) throw DomainError("reilly_average_check supports N in {2, 3}");
    // Gauss-Legendre in z = cos(theta), trapezoid in azimuth.
    std::vector<double> zn, zw;
    const int nz = std::max(4, n_nodes / 2);
    gauss_legendre_01(nz, zn, zw);
    const int na = std::max(8, n_nodes);
    for (int j = 0; j < nz; ++j) {
        const double z = 2.0 * zn[j] - 1.0;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int i = 0; i < na; ++i) {
            const double a = 2.0 * M_PI * i / na;
            const double d = w[0] * r * std::cos(a) + w[1] * r * std::sin(a) + w[2] * z;
            // dz measure: 2 * zw over (-1,1), azimuth 2pi/na; total 4pi.
            sum.add(d * d * (2.0 * zw[j]) * (2.0 * M_PI / na));
        }
    }
    return std::abs(sum.total() / (4.0 * M_PI) - w.squaredNorm() / 3.0);
}

FrameEnergyResult frame_energy_check(const FreeBoundarySurface& surface, double c, int n_samples,
                                     uint64_t seed) {
    const int N = surface.ambient_dim();
    FrameEnergyResult out;
    out.nodes = n_samples;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uxi(0.05, 0.995), uphi(0.0, 2.0 * M_PI);
    const auto& dom = surface.cone().domain();

    for (int k = 0; k < n_samples; ++k) {
        VectorXd u;
        if (N == 3) {
            const double phi = uphi(rng);
            const double s = uxi(rng) * dom.b(phi);
            u = Vector2d(s * std::cos(phi), s * std::sin(phi));
        } else {
            u = VectorXd::Constant(1, (2.0 * uxi(rng) - 1.0) * dom.alpha);
        }
        const SurfaceJets P = surface.jets(u);

        // W = c x - nu with parameter derivatives.
        MatrixXd dW(N, P.M);
        for (int a = 0; a < N; ++a)
            for (int i = 0; i < P.M; ++i)
                dW(a, i) = c * P.x[a].d(i) - P.nu[a].d(i);

        const OrthonormalFrame frame = orthonormal_frame(P.chart_record());
        double lhs = 0.0;
        for (int j = 0; j < P.M; ++j) lhs += frame.frame_derivative(dW, j).squaredNorm();

        const double H = P.H.value();
        const double rhs = (N - 1) * c * c - 2.0 * c * (N - 1) * H + P.tr_S2.value();
        out.max_error = std::max(out.max_error, std::abs(lhs - rhs));

        if (N >= 3) {
            const double cmc_rhs = double((N - 1) * (N - 2)) * (c * c - P.sigma2.value());
            out.cmc_form_error = std::max(out.cmc_form_error, std::abs(lhs - cmc_rhs));
        }
    }
    return out;
}

}  // namespace conegeo
