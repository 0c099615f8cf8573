#ifndef CURVLIFT_NORMS_HPP
#define CURVLIFT_NORMS_HPP

#include <curvlift/curvature.hpp>

#include <vector>

namespace curvlift {

/// Piecewise scalar evaluated per (element, reference point).
using ElemScalar = std::function<double(int, const Vec2&)>;

/// sqrt(sum_T int f^2 dx) with the Euclidean Lebesgue measure.
double l2_norm(const Mesh& mesh, const ElemScalar& f, int exactness);

/// Discrete H^-1 norm of a piecewise scalar density: solves the Euclidean
/// Poisson problem -Delta w = f with homogeneous Dirichlet values on the whole
/// boundary, in a Lagrange space of degree aux_degree on the same mesh, and
/// returns the full H^1 norm (||w||^2 + ||grad w||^2)^(1/2). The right-hand
/// side is integrated at the given exactness.
double hminus1_norm(const Mesh& mesh, const ElemScalar& f, int aux_degree, int exactness,
                    SolveReport* report = nullptr);

/// Broken H^1 error between a piecewise field and a smooth reference:
/// sqrt(sum_T int (u - r)^2 + |grad u - grad r|^2 dx).
double h1_broken_error(const Mesh& mesh, const ScalarField& u,
                       const std::function<double(const Vec2&)>& ref,
                       const std::function<Vec2(const Vec2&)>& ref_grad, int exactness);

/// Empirical orders of convergence, rate_i = log(e_i/e_{i+1}) / log(h_i/h_{i+1}).
/// Lists must have equal length >= 2 and positive h; nonpositive errors yield
/// non-finite rates.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

}  // namespace curvlift

#endif
