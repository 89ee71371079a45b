#pragma once

#include <optional>

#include "conegeo/chart.hpp"

namespace conegeo {

/// Rule fixing the sign of the unit normal.
///   radial_outward:  <x, nu> > 0 (exterior normal of starshaped graphs);
///   align_reference: <ref, nu> > 0.
struct Orientation {
    enum class Mode { radial_outward, align_reference };
    Mode mode = Mode::radial_outward;
    VectorXd reference;

    static Orientation radial() { return {Mode::radial_outward, {}}; }
    static Orientation align(VectorXd ref) { return {Mode::align_reference, std::move(ref)}; }
};

/// All pointwise geometry of a hypersurface patch at one chart node.
/// Conventions: II(v,w) = <grad_v nu, w> with nu fixed by the orientation
/// rule, so origin-centered spheres with exterior normal have H = 1/R;
/// sigma2 = ((N-1)^2 H^2 - tr S^2) / ((N-1)(N-2)), unset for N = 2.
struct CurvaturePoint {
    VectorXd u;           // parameter point
    VectorXd x;           // position
    VectorXd nu;          // unit normal
    MatrixXd g;           // metric dx^T dx
    MatrixXd ii;          // second fundamental form in chart coordinates
    MatrixXd shape;       // shape operator g^{ -1 } ii
    double H = 0.0;       // mean curvature
    std::optional<double> sigma2;
    double tr_S2 = 0.0;   // trace of the squared shape operator
    double area_weight = 0.0;  // sqrt(det g)
    double support = 0.0;      // <x, nu>

    double sigma2_checked() const {
        if (!sigma2) throw Error("sigma2 is undefined for N = 2");
        return *sigma2;
    }
};

/// Jet-valued geometry of a chart at one node: every quantity carries its
/// parameter derivatives, which is what the identity fields and tangential
/// divergences differentiate. Valid orders decrease with each derivative of
/// the position jet (x at chart order, nu one lower, ii two lower).
struct SurfaceJets {
    int N = 0, M = 0;
    VectorXd u;
    JetVec x;                       // ambient position
    std::array<JetVec, 2> dx{};    // columns of the differential
    JetVec nu;                      // unit normal
    std::array<std::array<Jet, 2>, 2> g{}, ginv{}, ii{}, shape{};
    Jet H, sigma2, support, area_weight, tr_S2;

    SurfaceJets(const Chart& chart, const VectorXd& u, const Orientation& orient);
    /// Build from an externally computed position jet (offset charts reuse
    /// this with their own normals).
    SurfaceJets(int ambient_dim, int param_dim, const VectorXd& u, const JetVec& x,
                const Orientation& orient);

    CurvaturePoint point() const;
    ChartJet chart_record() const { return chart_jet_from(u, x, N, M); }

private:
    void derive(const Orientation& orient);
};

/// Value-level curvature data from a first/second-derivative record; works
/// for any ambient dimension (normal from the null space of dx^T).
CurvaturePoint curvature_at(const ChartJet& jet, const Orientation& orient);

/// Unit normal candidate (unnormalized sign) in jet arithmetic; N <= 3.
JetVec normal_jets(const JetVec dx[2], int ambient_dim, int param_dim, double sign);

/// sign in {-1, +1} so that the oriented normal obeys the rule.
double orientation_sign(const Orientation& orient, const VectorXd& x, const VectorXd& normal_candidate);

/// Tangential divergence div_Gamma(F) = sum_{i,j} g^{ij} <dF/du_i, dx_j> of
/// an ambient field given with parameter derivatives (jet order >= 1).
double tangential_divergence(const JetVec& field, const SurfaceJets& P);

/// Orthonormal tangent frame e_1..e_{N-1} by Gram-Schmidt on the chart
/// differential, plus the tangential gradient and frame-derivative maps.
struct OrthonormalFrame {
    MatrixXd e;      // N x (N-1), columns are the frame
    MatrixXd basis;  // (N-1) x (N-1): e_j = sum_i basis(i,j) dx_i
    MatrixXd dx;
    MatrixXd g_inv;

    /// grad^Gamma f from the parameter derivatives df_i = df/du_i.
    VectorXd gradient(const VectorXd& df) const;
    /// grad_{e_j} W for an ambient field with parameter derivatives dW (N x (N-1)).
    VectorXd frame_derivative(const MatrixXd& dW, int j) const;
};

OrthonormalFrame orthonormal_frame(const ChartJet& jet);

}  // namespace conegeo
