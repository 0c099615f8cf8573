#include <curvlift/norms.hpp>

#include <curvlift/quadrature.hpp>

#include <cmath>
#include <stdexcept>

namespace curvlift {

double l2_norm(const Mesh& mesh, const ElemScalar& f, int exactness) {
  const TriangleRule rule = triangle_rule(exactness);
  double acc = 0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    for (int q = 0; q < rule.size(); ++q) {
      const double v = f(t, rule.points.row(q).transpose());
      acc += rule.weights(q) * v * v * map.detF;
    }
  }
  return std::sqrt(acc);
}

double hminus1_norm(const Mesh& mesh, const ElemScalar& f, int aux_degree, int exactness,
                    SolveReport* report) {
  const LagrangeSpace W(mesh, aux_degree);
  const int nloc = W.n_local();

  // Euclidean stiffness and mass; polynomial integrands, so a fixed rule
  const TriangleRule prule = triangle_rule(2 * aux_degree);
  const ShapeTable ptab = W.basis(prule.points, 1);
  std::vector<Eigen::Triplet<double>> trip_a, trip_m;
  trip_a.reserve(static_cast<size_t>(mesh.n_triangles()) * nloc * nloc);
  trip_m.reserve(trip_a.capacity());
  MatrixXd local_a(nloc, nloc), local_m(nloc, nloc), grads(nloc, 2);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    local_a.setZero();
    local_m.setZero();
    for (int q = 0; q < prule.size(); ++q) {
      for (int i = 0; i < nloc; ++i) {
        const Vec2 dref(ptab.d[0](q, i), ptab.d[1](q, i));
        grads.row(i) = (map.Finv.transpose() * dref).transpose();
      }
      const double w = prule.weights(q) * map.detF;
      local_a.noalias() += w * (grads * grads.transpose());
      local_m.noalias() += w * (ptab.val.row(q).transpose() * ptab.val.row(q));
    }
    const auto& dofs = W.element_dofs(t);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) {
        trip_a.emplace_back(dofs[i], dofs[j], local_a(i, j));
        trip_m.emplace_back(dofs[i], dofs[j], local_m(i, j));
      }
  }
  SparseMat A(W.n_dofs(), W.n_dofs()), M(W.n_dofs(), W.n_dofs());
  A.setFromTriplets(trip_a.begin(), trip_a.end());
  M.setFromTriplets(trip_m.begin(), trip_m.end());

  const TriangleRule frule = triangle_rule(exactness);
  const ShapeTable ftab = W.basis(frule.points, 0);
  VectorXd b = VectorXd::Zero(W.n_dofs());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    const auto& dofs = W.element_dofs(t);
    for (int q = 0; q < frule.size(); ++q) {
      const double w = frule.weights(q) * f(t, frule.points.row(q).transpose()) * map.detF;
      for (int i = 0; i < nloc; ++i) b(dofs[i]) += w * ftab.val(q, i);
    }
  }

  const VectorXd zero = VectorXd::Zero(W.n_dofs());
  const VectorXd w = solve_spd(A, b, W.boundary_mask(), zero, report);
  return std::sqrt(w.dot(M * w) + w.dot(A * w));
}

double h1_broken_error(const Mesh& mesh, const ScalarField& u,
                       const std::function<double(const Vec2&)>& ref,
                       const std::function<Vec2(const Vec2&)>& ref_grad, int exactness) {
  const TriangleRule rule = triangle_rule(exactness);
  double acc = 0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 xhat = rule.points.row(q).transpose();
      const Vec2 x = map.origin + map.F * xhat;
      const ScalarJet uj = u.jet(t, xhat);
      const double dv = uj.v - ref(x);
      const Vec2 dg = uj.grad - ref_grad(x);
      acc += rule.weights(q) * (dv * dv + dg.squaredNorm()) * map.detF;
    }
  }
  return std::sqrt(acc);
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw std::invalid_argument("eoc: need equally sized lists of length >= 2");
  std::vector<double> rates(errors.size() - 1);
  for (size_t i = 0; i + 1 < errors.size(); ++i)
    rates[i] = std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]);
  return rates;
}

}  // namespace curvlift
