#ifndef CURVLIFT_QUADRATURE_HPP
#define CURVLIFT_QUADRATURE_HPP

#include <curvlift/types.hpp>

namespace curvlift {

/// Gauss rule on the segment [0,1]. Weights are positive and sum to 1.
struct SegmentRule {
  VectorXd points;
  VectorXd weights;
  int exactness;  // exact for polynomials up to this total degree

  int size() const { return static_cast<int>(points.size()); }
};

/// Quadrature on the reference triangle {x,y >= 0, x+y <= 1}.
/// Weights are positive and sum to 1/2.
struct TriangleRule {
  PointList points;
  VectorXd weights;
  int exactness;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule on [0,1] exact for polynomials of degree <= exactness.
SegmentRule segment_rule(int exactness);

/// Collapsed (Duffy) tensor rule on the reference triangle, built from a
/// Gauss-Legendre rule and a Gauss-Jacobi rule absorbing the collapse weight.
/// Exact for bivariate polynomials of total degree <= exactness.
TriangleRule triangle_rule(int exactness);

}  // namespace curvlift

#endif
