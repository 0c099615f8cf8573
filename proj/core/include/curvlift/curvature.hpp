#ifndef CURVLIFT_CURVATURE_HPP
#define CURVLIFT_CURVATURE_HPP

#include <curvlift/analytic.hpp>
#include <curvlift/sparse.hpp>
#include <curvlift/spaces.hpp>

#include <utility>

namespace curvlift {

/// Piecewise-smooth fields evaluated per (element, reference point), returning
/// physical-coordinate jets. Metrics and general symmetric tensors share the
/// representation; a MetricField is expected to be pointwise positive definite
/// where a kernel requires it.
struct MetricField {
  std::function<SymJet(int, const Vec2&)> jet;
};
struct SymTensorField {
  std::function<SymJet(int, const Vec2&)> jet;
};
struct ScalarField {
  std::function<ScalarJet(int, const Vec2&)> jet;
};

MetricField regge_metric_field(const ReggeSpace& space, VectorXd coeffs);
MetricField analytic_metric_field(const Mesh& mesh, const AnalyticMetric& metric);
ScalarField lagrange_scalar_field(const LagrangeSpace& space, VectorXd coeffs);

/// a - b, as a (generally indefinite) symmetric tensor field.
SymTensorField difference_field(const MetricField& a, const MetricField& b);
/// base + t * s; the straight-line path between metrics at parameter t.
MetricField blended_metric_field(const MetricField& base, const SymTensorField& s, double t);

/// Mass matrix of the lifting space weighted by the volume form of g:
/// M_ij = sum_T int phi_i phi_j sqrt(det g) dx. Throws std::domain_error with
/// element context if g is not positive definite at a quadrature point.
SparseMat assemble_weighted_mass(const LagrangeSpace& V, const MetricField& g, int exactness);

/// Distributional densitized Gauss curvature of g against the nodal basis:
/// F_i = sum_T int K(g) phi_i w + sum_E int [kappa] phi_i w_E + sum_V Theta_V phi_i(V),
/// where [kappa] sums the geodesic curvatures from both sides with inward
/// normals (one side on the boundary) and Theta_V = 2 pi minus the total
/// g-angle at V. Covers every edge and vertex including Dirichlet ones;
/// constrained test dofs are filtered in the solve.
VectorXd assemble_gauss_functional(const LagrangeSpace& V, const MetricField& g, int exactness);

/// Neumann data functional of the smooth background metric:
/// N_i = int_{Gamma_N} kappa_hat phi_i w_hat + sum_{V in Gamma_N} (2 pi - angle_hat_V) phi_i(V),
/// with the boundary angle at V measured by ghat between the two boundary
/// edge directions (pi at straight boundary vertices).
VectorXd assemble_neumann_functional(const LagrangeSpace& V, const AnalyticMetric& ghat,
                                     int exactness);

/// int K_hat phi_i sqrt(det ghat) dx; the volume part of the smooth functional.
VectorXd assemble_volume_functional(const LagrangeSpace& V, const AnalyticMetric& ghat,
                                    int exactness);

/// Curvature lifting: solves M K = F(g_h) - N(ghat) over the test dofs, with
/// K pinned to the nodal interpolation of the exact curvature on the Dirichlet
/// boundary. Returns the full coefficient vector of K_h in V.
VectorXd lift_curvature(const LagrangeSpace& V, const MetricField& g_h,
                        const AnalyticMetric& ghat, int exactness,
                        SolveReport* report = nullptr);

/// Total distributional curvature of g tested with u = 1, with pi subtracted
/// per boundary vertex; equals 2 pi for any admissible metric (Gauss-Bonnet).
double gauss_bonnet_audit(const Mesh& mesh, const MetricField& g, int exactness);

/// Distributional covariant incompatibility pairing (inc~ sigma)(u):
/// sum_T [ int inc_g(sigma) u w
///         - oint u <curl_g sigma + d(sigma_nt), tau_hat> w
///         - sum_V (sigma_nt jump at V) u(V) ],
/// boundary traversed counterclockwise, normals inward.
double distributional_inc(const Mesh& mesh, const MetricField& g, const SymTensorField& sigma,
                          const ScalarField& u, int exactness);

/// Adjoint pairing (rotrot~ u)(sigma):
/// sum_T [ int <rotrot_g u, sigma> w + oint sigma(tau_hat,tau_hat) <grad_g u, nhat> w ].
double distributional_rotrot(const Mesh& mesh, const MetricField& g, const ScalarField& u,
                             const SymTensorField& sigma, int exactness);

/// (inc~ sigma)(phi_i) for every nodal basis function of V.
VectorXd assemble_inc_functional(const LagrangeSpace& V, const MetricField& g,
                                 const SymTensorField& sigma, int exactness);

/// Both sides of the integral representation of the curvature error,
///   (K~w(g_h) - K^ w^)(u) = -1/2 int_0^1 (inc~_{g(t)} sigma)(u) dt,
/// g(t) = ghat + t sigma, sigma = g_h - ghat, for a test function u (given by
/// coefficients in V) vanishing on the whole boundary. The left side is the
/// assembled curvature functional minus the exact volume functional; the right
/// side uses a t_points-point Gauss rule in t.
std::pair<double, double> error_representation_check(const Mesh& mesh,
                                                     const AnalyticMetric& ghat,
                                                     const MetricField& g_h,
                                                     const LagrangeSpace& V, const VectorXd& u,
                                                     int t_points, int exactness);

}  // namespace curvlift

#endif
