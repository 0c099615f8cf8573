#ifndef CURVLIFT_SPACES_HPP
#define CURVLIFT_SPACES_HPP

#include <curvlift/mesh.hpp>
#include <curvlift/metric.hpp>
#include <curvlift/polynomial.hpp>

#include <functional>
#include <vector>

namespace curvlift {

/// Continuous nodal Lagrange space of degree r >= 1 on a triangle mesh.
/// Global dof order: vertices, then (r-1) dofs per edge walked in the global
/// (ascending vertex index) edge direction, then element interior dofs.
class LagrangeSpace {
 public:
  LagrangeSpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int n_dofs() const { return n_dofs_; }
  int n_local() const { return n_local_; }

  const std::vector<int>& element_dofs(int t) const { return element_dofs_[t]; }
  /// Dofs whose node lies on the closed Dirichlet boundary.
  const std::vector<std::uint8_t>& dirichlet_mask() const { return dirichlet_mask_; }
  /// Dofs whose node lies anywhere on the domain boundary.
  const std::vector<std::uint8_t>& boundary_mask() const { return boundary_mask_; }
  /// Physical position of a dof's nodal point.
  Vec2 node_position(int dof) const { return node_positions_.row(dof); }

  /// Nodal basis (and reference derivatives) at reference points.
  ShapeTable basis(const PointList& points, int nderiv) const;

  /// Nodal interpolation of a physical-coordinate function.
  VectorXd interpolate(const std::function<double(const Vec2&)>& f) const;

 private:
  const Mesh* mesh_;
  int degree_, n_local_, n_dofs_;
  MatrixXd nodal_coeffs_;  // Bernstein coefficients of the nodal basis, nb x nloc
  PointList ref_nodes_;
  std::vector<std::vector<int>> element_dofs_;
  std::vector<std::uint8_t> dirichlet_mask_;
  std::vector<std::uint8_t> boundary_mask_;
  PointList node_positions_;
};

/// Scalar 2-jet of a Lagrange field in physical coordinates.
ScalarJet lagrange_eval(const LagrangeSpace& space, const VectorXd& coeffs, int t,
                        const Vec2& xhat, const ElementMap& map, int nderiv);

/// Values (and physical derivatives) of a symmetric-tensor basis at a set of
/// reference points. Component index: 0 -> 11, 1 -> 12, 2 -> 22.
struct ReggeTable {
  std::array<MatrixXd, 3> val;
  std::array<std::array<MatrixXd, 2>, 3> d;
  std::array<std::array<MatrixXd, 3>, 3> d2;
  int nderiv = 0;
};

/// Regge space of degree k >= 0: tangential-tangential continuous symmetric
/// tensors, piecewise polynomial of degree k. Dofs are (k+1) Legendre moments
/// of sigma(Delta,Delta) per edge (Delta the global lo->hi edge vector, unit
/// parameter speed) followed by 3k(k+1)/2 interior moments per triangle
/// against E_c q, q in P^{k-1}. Local bases are the canonical reference dual
/// basis; orientation is handled by the (-1)^j parity of the Legendre moments,
/// exposed as per-element sign vectors.
class ReggeSpace {
 public:
  ReggeSpace(const Mesh& mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int n_dofs() const { return n_dofs_; }
  int n_local() const { return n_local_; }
  int n_edge_dofs() const { return degree_ + 1; }

  const std::vector<int>& element_dofs(int t) const { return element_dofs_[t]; }
  const VectorXd& element_signs(int t) const { return element_signs_[t]; }

  /// Canonical reference dual basis at reference points.
  ReggeTable basis(const PointList& points, int nderiv) const;

  /// Canonical interpolant of a physical symmetric tensor field: matches all
  /// edge and interior moments (quadrature exactness 2k+6).
  VectorXd interpolate(const std::function<Mat2(const Vec2&)>& field) const;

  /// Residual of the edge moments of the interpolant against the input field,
  /// max over edges and moment indices; diagnostic for interpolation tests.
  double edge_moment_residual(const VectorXd& coeffs,
                              const std::function<Mat2(const Vec2&)>& field) const;

  /// Same diagnostic for the interior moments; 0 when degree == 0.
  double interior_moment_residual(const VectorXd& coeffs,
                                  const std::function<Mat2(const Vec2&)>& field) const;

 private:
  const Mesh* mesh_;
  int degree_, n_local_, n_dofs_;
  MatrixXd dual_coeffs_;  // primitive (E_c x Bernstein) coefficients, N x N
  std::vector<std::vector<int>> element_dofs_;
  std::vector<VectorXd> element_signs_;
};

/// Symmetric-tensor 2-jet of a Regge field in physical coordinates
/// (covariant pullback sigma = F^{-T} sigma_ref F^{-1}).
SymJet regge_eval(const ReggeSpace& space, const VectorXd& coeffs, int t, const Vec2& xhat,
                  const ElementMap& map, int nderiv);

}  // namespace curvlift

#endif
