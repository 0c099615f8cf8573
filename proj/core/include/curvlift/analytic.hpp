#ifndef CURVLIFT_ANALYTIC_HPP
#define CURVLIFT_ANALYTIC_HPP

#include <curvlift/metric.hpp>

#include <functional>
#include <string>

namespace curvlift {

/// Smooth background metric given in closed form: full 2-jet plus the exact
/// Gauss curvature.
struct AnalyticMetric {
  std::string name;
  std::function<SymJet(const Vec2&)> jet;
  std::function<double(const Vec2&)> gauss;
};

/// Euclidean metric, K = 0.
AnalyticMetric flat_metric();

/// Stereographic metric of the unit sphere, g = 4/(1+|x|^2)^2 delta, K = 1.
AnalyticMetric sphere_patch_metric();

/// Graph metric g = I + grad f grad f^T of f = (x^2+y^2)/2 - (x^4+y^4)/12 on
/// the unit square; the convergence benchmark. K = 81(1-x^2)(1-y^2)/
/// (9 + x^2(x^2-3)^2 + y^2(y^2-3)^2)^2.
AnalyticMetric benchmark_metric();

/// Exact geodesic curvature of the benchmark metric on the Neumann boundary
/// (left side x=0 and top side y=1), with the g-normal pointing into the
/// domain. Zero on the left side; throws if p is not on either side.
double benchmark_kappa_neumann(const Vec2& p);

}  // namespace curvlift

#endif
