#ifndef CURVLIFT_SPARSE_HPP
#define CURVLIFT_SPARSE_HPP

#include <curvlift/types.hpp>

#include <Eigen/SparseCore>

#include <cstdint>
#include <vector>

namespace curvlift {

using SparseMat = Eigen::SparseMatrix<double>;

struct SolveReport {
  bool used_iterative_fallback = false;
  int iterations = 0;       // 0 for the direct path
  double residual_norm = 0; // ||Ax - b|| over the free dofs
};

/// Solves A x = b for a symmetric positive definite A with Dirichlet
/// constraints eliminated symmetrically: dofs with mask != 0 are pinned to
/// `values` and the remaining system is solved by a direct Cholesky-type
/// factorization (iterative CG fallback at tolerance 1e-12 if the
/// factorization fails). Throws std::runtime_error if both paths fail or if
/// inputs are inconsistent.
VectorXd solve_spd(const SparseMat& A, const VectorXd& b,
                   const std::vector<std::uint8_t>& dirichlet_mask,
                   const VectorXd& dirichlet_values, SolveReport* report = nullptr);

/// Unconstrained convenience overload.
VectorXd solve_spd(const SparseMat& A, const VectorXd& b, SolveReport* report = nullptr);

}  // namespace curvlift

#endif
