#ifndef CURVLIFT_METRIC_HPP
#define CURVLIFT_METRIC_HPP

#include <curvlift/types.hpp>

#include <array>

namespace curvlift {

/// Pointwise 2-jet of a symmetric 2-tensor field in physical coordinates.
/// d[k] = d/dx_k of the value; d2 is ordered xx, xy, yy.
struct SymJet {
  Mat2 v = Mat2::Zero();
  std::array<Mat2, 2> d = {Mat2::Zero(), Mat2::Zero()};
  std::array<Mat2, 3> d2 = {Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};

  SymJet& operator+=(const SymJet& o);
  SymJet& operator-=(const SymJet& o);
  SymJet& operator*=(double a);
};
SymJet operator+(SymJet a, const SymJet& b);
SymJet operator-(SymJet a, const SymJet& b);
SymJet operator*(double a, SymJet s);

/// Pointwise 2-jet of a scalar field.
struct ScalarJet {
  double v = 0;
  Vec2 grad = Vec2::Zero();
  Mat2 hess = Mat2::Zero();
};

/// Christoffel symbols of the second kind, G[i][j][k] = Gamma^i_{jk}.
struct Christoffel {
  double G[2][2][2];
};

/// Christoffel symbols together with their coordinate derivatives,
/// dG[d][i][j][k] = d/dx_d Gamma^i_{jk}.
struct ChristoffelJet {
  Christoffel ch;
  double dG[2][2][2][2];
};

Christoffel christoffel(const SymJet& g);
ChristoffelJet christoffel_jet(const SymJet& g);

/// sqrt(det g); throws std::domain_error if g is not positive definite.
double volume_density(const Mat2& g);

/// Gauss curvature K = g_{l1}(d1 G^l_22 - d2 G^l_12 + G^l_1m G^m_22 - G^l_2m G^m_12)/det g.
double gauss_curvature(const SymJet& g);

/// g-orthonormal frame along an edge: tau/nu are the Euclidean unit tangent and
/// normal, that = tau/|tau|_g and nhat the g-normalized g-orthogonal vector on
/// the side of nu (nhat ~ g^{-1} nu). Throughout the library nu points INTO the
/// incident triangle (or into the domain on the boundary).
struct EdgeFrame {
  Vec2 tau, nu;    // Euclidean unit vectors
  Vec2 that, nhat; // g-unit vectors
  double sqrt_gtt; // |tau|_g, converts Euclidean to g arclength
};

EdgeFrame edge_frame(const Mat2& g, const Vec2& tau, const Vec2& nu);

/// Geodesic curvature kappa = g(nabla_that that, nhat) of a straight edge,
/// via the Christoffel expansion; the tangent derivative of the normalization
/// contributes only along that and drops in the pairing with nhat.
double geodesic_curvature(const SymJet& g, const EdgeFrame& fr);

/// Interior angle between directions t1, t2 measured by g, in [0, pi].
double angle(const Mat2& g, const Vec2& t1, const Vec2& t2);

/// Covariant curl of a symmetric tensor, a covector:
/// (curl_g sigma)_i = ehat^{jk} (d_j sigma_ik - G^m_{ji} sigma_mk), ehat = eps/sqrt(det g).
Vec2 curl_kernel(const SymJet& g, const SymJet& sigma);

/// Covariant incompatibility, inc_g sigma = curl_g curl_g sigma:
/// ehat^{qi} ehat^{jk} (d_j d_q s_ik - d_q(G^m_{ji} s_mk) - G^l_{lq}(d_j s_ik - G^m_{ji} s_mk)).
double inc_kernel(const SymJet& g, const SymJet& sigma);

/// rot_g rot_g u as a (2,0)-tensor, from the collapsed coordinate formula
/// ([rotrot u]^{ij} - [rot u]^i eps^{jq} G^l_{lq} + eps^{jq} G^i_{qk} [rot u]^k)/det g
/// with Euclidean proxies [rot u]^i = eps^{iq} d_q u, [rotrot u]^{ij} = eps^{jk} d_k [rot u]^i.
Mat2 rotrot_kernel(const SymJet& g, const ScalarJet& u);

/// (nabla_that sigma)(nhat, that) along an edge.
double nabla_t_sigma_nt(const SymJet& g, const SymJet& sigma, const EdgeFrame& fr);

}  // namespace curvlift

#endif
