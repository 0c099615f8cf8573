#ifndef CURVLIFT_POLYNOMIAL_HPP
#define CURVLIFT_POLYNOMIAL_HPP

#include <curvlift/types.hpp>

#include <array>

namespace curvlift {

/// Values (and optionally reference derivatives) of a scalar basis at a set of
/// reference points. d[k] holds d/dx_k, d2 is ordered xx, xy, yy. Matrices are
/// (number of points) x (basis size); unused derivative blocks stay empty.
struct ShapeTable {
  MatrixXd val;
  std::array<MatrixXd, 2> d;
  std::array<MatrixXd, 3> d2;
  int nderiv = 0;
};

/// Dimension of P^degree on a triangle.
inline int triangle_poly_size(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Bernstein basis of the given degree on the reference triangle, evaluated at
/// the given points with derivatives up to order nderiv (0, 1 or 2). Basis
/// order: exponents (i,j,k) of (lambda1, lambda2) graded lexicographically,
/// i.e. B_m ~ x^a y^b with (a+b, b) increasing.
ShapeTable bernstein_triangle(int degree, const PointList& points, int nderiv);

/// Shifted Legendre polynomials P~_0..P~_degree on [0,1], orthogonal, P~_j(1) = 1,
/// P~_j(1-t) = (-1)^j P~_j(t). Returns (points) x (degree+1).
MatrixXd legendre_shifted(int degree, const VectorXd& points);

/// Equispaced nodal points of the degree-r Lagrange element on the reference
/// triangle, ordered: 3 vertices, then r-1 nodes per local edge (edge m opposite
/// vertex m, walked from its lower to its higher local vertex index), then the
/// interior nodes graded lexicographically.
PointList lagrange_nodes(int degree);

}  // namespace curvlift

#endif
