#include <curvlift/sparse.hpp>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include <stdexcept>

namespace curvlift {

VectorXd solve_spd(const SparseMat& A, const VectorXd& b,
                   const std::vector<std::uint8_t>& dirichlet_mask,
                   const VectorXd& dirichlet_values, SolveReport* report) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || b.size() != n)
    throw std::runtime_error("solve_spd: dimension mismatch");
  if (!dirichlet_mask.empty() &&
      (static_cast<int>(dirichlet_mask.size()) != n || dirichlet_values.size() != n))
    throw std::runtime_error("solve_spd: constraint arrays must match the system size");

  // index map free dofs -> compact range
  std::vector<int> pos(n, -1);
  int nfree = 0;
  for (int i = 0; i < n; ++i)
    if (dirichlet_mask.empty() || !dirichlet_mask[i]) pos[i] = nfree++;

  VectorXd rhs(nfree);
  for (int i = 0; i < n; ++i)
    if (pos[i] >= 0) rhs(pos[i]) = b(i);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(A.nonZeros());
  for (int col = 0; col < n; ++col) {
    for (SparseMat::InnerIterator it(A, col); it; ++it) {
      const int row = static_cast<int>(it.row());
      if (pos[row] < 0) continue;
      if (pos[col] >= 0)
        trip.emplace_back(pos[row], pos[col], it.value());
      else
        rhs(pos[row]) -= it.value() * dirichlet_values(col);  // move pinned columns to the rhs
    }
  }
  SparseMat Aff(nfree, nfree);
  Aff.setFromTriplets(trip.begin(), trip.end());
  Aff.makeCompressed();

  VectorXd xf;
  bool direct_ok = false;
  SolveReport rep;
  {
    Eigen::SimplicialLDLT<SparseMat> solver(Aff);
    if (solver.info() == Eigen::Success) {
      xf = solver.solve(rhs);
      direct_ok = solver.info() == Eigen::Success;
    }
  }
  if (!direct_ok) {
    Eigen::ConjugateGradient<SparseMat, Eigen::Lower | Eigen::Upper> cg(Aff);
    cg.setTolerance(1e-12);
    cg.setMaxIterations(20 * nfree + 100);
    xf = cg.solve(rhs);
    if (cg.info() != Eigen::Success)
      throw std::runtime_error("solve_spd: direct factorization and CG fallback both failed");
    rep.used_iterative_fallback = true;
    rep.iterations = static_cast<int>(cg.iterations());
  }
  rep.residual_norm = nfree > 0 ? (Aff * xf - rhs).norm() : 0.0;

  VectorXd x(n);
  for (int i = 0; i < n; ++i)
    x(i) = pos[i] >= 0 ? xf(pos[i]) : dirichlet_values(i);
  if (report) *report = rep;
  return x;
}

VectorXd solve_spd(const SparseMat& A, const VectorXd& b, SolveReport* report) {
  return solve_spd(A, b, {}, VectorXd(), report);
}

}  // namespace curvlift
