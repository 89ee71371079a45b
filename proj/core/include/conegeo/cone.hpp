#pragma once

#include <functional>
#include <memory>

#include "conegeo/geometry.hpp"

namespace conegeo {

/// The domain omega on the unit sphere S^{N-1} that generates the cone.
/// N = 3: geodesic-polar radius b(phi) around the north pole (smooth,
/// 2pi-periodic, 0 < b < pi). N = 2: an arc of half-width `half_width`
/// centered at angle `mid` (total opening < pi).
struct SphericalDomainSpec {
    enum class Family { cap, perturbed_cap, custom, arc };

    int dimension = 3;
    Family family = Family::cap;
    double alpha = 1.0;   // cap base angle (N = 3) or arc half-width (N = 2)
    double delta = 0.0;   // perturbed cap amplitude
    int k = 0;            // perturbed cap frequency
    double mid = 0.0;     // arc center angle (N = 2)
    std::function<Jet(const Jet&)> b_fn;  // set for N = 3

    static SphericalDomainSpec cap(double alpha);
    static SphericalDomainSpec perturbed_cap(double alpha, double delta, int k);
    static SphericalDomainSpec custom(std::function<Jet(const Jet&)> b);
    static SphericalDomainSpec wedge(double opening, double mid = 0.0);

    double b(double phi) const;
    Jet b_jet(const Jet& phi) const { return b_fn(phi); }
    double max_b() const;
    /// Diagnostic only: whether omega sits strictly inside a half-space
    /// (max geodesic radius < pi/2), a hypothesis of the rigidity statement.
    bool strictly_in_half_space() const { return max_b() < M_PI / 2.0; }

    void validate() const;
};

struct ConvexityProbe {
    double min_eigenvalue = 0.0;
    bool convex = false;
    int samples = 0;
};

/// The cone over omega: lateral boundary chart, exterior normal n, and the
/// cone's second fundamental form II^Sigma. The radial direction is always
/// tangent to the lateral boundary (<x, n> = 0) and is a flat direction
/// (II^Sigma(x, .) = 0); both are exercised by the test suite.
class ConeGeometry {
public:
    explicit ConeGeometry(SphericalDomainSpec spec);

    int ambient_dim() const { return spec_.dimension; }
    const SphericalDomainSpec& domain() const { return spec_; }

    /// Lateral chart (t, phi) -> t * gamma(phi) for N = 3; for N = 2 the
    /// chart of ray `side` (0: phi = mid - half_width, 1: mid + half_width).
    const Chart& lateral_chart(int side = 0) const;

    /// gamma(phi) on the unit sphere (N = 3) or the unit ray direction of
    /// `side` (N = 2, phi ignored).
    VectorXd boundary_sphere_point(double phi, int side = 0) const;

    /// Exterior unit normal of the cone at a lateral-boundary point;
    /// throws DomainError off the lateral boundary or at the vertex.
    VectorXd normal_at(const VectorXd& x) const;

    struct IIValue {
        double value = 0.0;
        double defect_v = 0.0, defect_w = 0.0;  // magnitude removed by the tangency projection
    };
    /// II^Sigma(v, w) at a lateral point; inputs are projected onto the cone
    /// tangent plane first and the projection defect is reported.
    IIValue II_at(const VectorXd& x, const VectorXd& v, const VectorXd& w) const;
    double II(const VectorXd& x, const VectorXd& v, const VectorXd& w) const {
        return II_at(x, v, w).value;
    }

    /// Minimum eigenvalue of II^Sigma over sampled lateral points;
    /// convex iff >= -1e-10.
    ConvexityProbe convexity_probe(int n_phi_samples = 128) const;

    /// (t, phi/side) of a lateral point; tolerance on the radial projection.
    struct LateralCoords { double t; double phi; int side; };
    LateralCoords locate(const VectorXd& x, double tol = 1e-8) const;

private:
    SphericalDomainSpec spec_;
    std::shared_ptr<const Chart> lateral_[2];
};

}  // namespace conegeo
