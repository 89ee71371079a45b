#include "conegeo/quadrature.hpp"

#include <cmath>

#include "conegeo/parallel.hpp"

namespace conegeo {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    // Newton iteration on P_n over (-1, 1), then map to (0, 1).
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
}

QuadratureRule make_rule(const ConeGeometry& cone, int n_phi, int n_s, int n_b, int level) {
    QuadratureRule r;
    r.n_phi = n_phi;
    r.n_s = n_s;
    r.n_b = n_b;
    r.level = level;

    const auto& dom = cone.domain();
    std::vector<double> xi, wxi;
    gauss_legendre_01(n_s, xi, wxi);

    if (cone.ambient_dim() == 2) {
        // Gauss-Legendre across the arc in the centered angle; interior
        // resolution is carried by n_phi for the 1-d case.
        std::vector<double> zt, wz;
        gauss_legendre_01(n_phi, zt, wz);
        const double half = dom.alpha;
        r.interior.reserve(n_phi);
        for (int j = 0; j < n_phi; ++j) {
            QuadratureRule::InteriorNode node;
            node.u = VectorXd::Constant(1, (2.0 * zt[j] - 1.0) * half);
            node.w = 2.0 * half * wz[j];
            r.interior.push_back(std::move(node));
        }
        r.boundary.push_back({0.0, 1.0});
        r.boundary.push_back({1.0, 1.0});
        return r;
    }

    const double wphi = 2.0 * M_PI / n_phi;
    r.interior.reserve(static_cast<std::size_t>(n_phi) * n_s);
    for (int i = 0; i < n_phi; ++i) {
        const double phi = wphi * i;
        const double b = dom.b(phi);
        const double cp = std::cos(phi), sp = std::sin(phi);
        for (int j = 0; j < n_s; ++j) {
            QuadratureRule::InteriorNode node;
            const double s = xi[j] * b;
            node.u = Vector2d(s * cp, s * sp);
            node.w = wphi * wxi[j] * xi[j] * b * b;  // radial Jacobian xi b^2
            r.interior.push_back(std::move(node));
        }
    }
    const double wb = 2.0 * M_PI / n_b;
    r.boundary.reserve(n_b);
    for (int i = 0; i < n_b; ++i) r.boundary.push_back({wb * i, wb});
    return r;
}

std::vector<QuadratureRule> make_rule_levels(const ConeGeometry& cone, int n_phi, int n_s, int n_b,
                                             int levels) {
    std::vector<QuadratureRule> out;
    out.reserve(levels);
    for (int l = 0; l < levels; ++l)
        out.push_back(make_rule(cone, n_phi << l, n_s << l, n_b << l, l));
    return out;
}

std::vector<double> integrate_surface_multi(
    const FreeBoundarySurface& surface, const QuadratureRule& rule,
    std::span<const std::function<double(const SurfaceJets&)>> integrands, int threads) {
    const std::size_t n = rule.interior.size(), k = integrands.size();
    std::vector<double> values(n * k);
    parallel_for(n, threads, [&](std::size_t i) {
        const SurfaceJets P = surface.jets(rule.interior[i].u);
        const double wa = rule.interior[i].w * P.area_weight.value();
        for (std::size_t q = 0; q < k; ++q) values[i * k + q] = wa * integrands[q](P);
    });
    std::vector<double> out(k);
    for (std::size_t q = 0; q < k; ++q) {
        NeumaierSum sum;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = values[i * k + q];
            if (!std::isfinite(v)) throw Error("non-finite surface integrand");
            sum.add(v);
        }
        out[q] = sum.total();
    }
    return out;
}

double integrate_surface(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                         const std::function<double(const CurvaturePoint&)>& integrand,
                         int threads) {
    std::function<double(const SurfaceJets&)> fn = [&](const SurfaceJets& P) {
        return integrand(P.point());
    };
    return integrate_surface_multi(surface, rule, std::span(&fn, 1), threads)[0];
}

std::vector<double> integrate_boundary_multi(
    const FreeBoundarySurface& surface, const QuadratureRule& rule,
    std::span<const std::function<double(const BoundaryData&)>> integrands, int threads) {
    const std::size_t n = rule.boundary.size(), k = integrands.size();
    std::vector<double> values(n * k);
    parallel_for(n, threads, [&](std::size_t i) {
        const BoundaryData bd = surface.boundary_data(rule.boundary[i].phi);
        const double wl = rule.boundary[i].w * bd.length_weight;
        for (std::size_t q = 0; q < k; ++q) values[i * k + q] = wl * integrands[q](bd);
    });
    std::vector<double> out(k);
    for (std::size_t q = 0; q < k; ++q) {
        NeumaierSum sum;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = values[i * k + q];
            if (!std::isfinite(v)) throw Error("non-finite boundary integrand");
            sum.add(v);
        }
        out[q] = sum.total();
    }
    return out;
}

double integrate_boundary(const FreeBoundarySurface& surface, const QuadratureRule& rule,
                          const std::function<double(const BoundaryData&)>& integrand,
                          int threads) {
    std::function<double(const BoundaryData&)> fn = integrand;
    return integrate_boundary_multi(surface, rule, std::span(&fn, 1), threads)[0];
}

ConvergenceTable convergence_table(const std::function<double(const QuadratureRule&)>& quantity,
                                   std::span<const QuadratureRule> levels) {
    if (levels.size() < 2) throw Error("convergence_table needs at least 2 levels");
    ConvergenceTable t;
    for (const auto& rule : levels) {
        ConvergenceTable::Row row;
        row.level = rule.level;
        row.n_phi = rule.n_phi;
        row.n_s = rule.n_s;
        row.n_b = rule.n_b;
        row.value = quantity(rule);
        t.rows.push_back(row);
    }
    const double finest = t.rows.back().value;
    for (auto& row : t.rows) row.delta_from_finest = std::abs(row.value - finest);
    if (t.rows.size() >= 3) {
        for (std::size_t i = 1; i + 1 < t.rows.size(); ++i) {
            const double d0 = t.rows[i - 1].delta_from_finest;
            const double d1 = t.rows[i].delta_from_finest;
            if (d0 > 0.0 && d1 > 0.0) t.rows[i].order = std::log2(d0 / d1);
        }
    }
    return t;
}

}  // namespace conegeo
