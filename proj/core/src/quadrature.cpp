#include <curvlift/quadrature.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace curvlift {

namespace {

// Golub-Welsch: nodes/weights of the n-point Gauss rule for the weight with
// Jacobi matrix built from the three-term recurrence coefficients (a_i, b_i):
//   p_{i+1}(x) = (x - a_i) p_i(x) - b_i p_{i-1}(x),  mu0 = integral of the weight.
void golub_welsch(const VectorXd& a, const VectorXd& b, double mu0,
                  VectorXd& nodes, VectorXd& weights) {
  const int n = static_cast<int>(a.size());
  MatrixXd J = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = a(i);
    if (i + 1 < n) {
      const double off = std::sqrt(b(i + 1));
      J(i, i + 1) = off;
      J(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(J);
  if (es.info() != Eigen::Success) throw std::runtime_error("quadrature: eigensolve failed");
  nodes = es.eigenvalues();
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    weights(i) = mu0 * v * v;
  }
}

// Gauss-Legendre on [-1,1]: a_i = 0, b_i = i^2/(4i^2-1), mu0 = 2.
void gauss_legendre(int n, VectorXd& nodes, VectorXd& weights) {
  VectorXd a = VectorXd::Zero(n), b = VectorXd::Zero(n);
  for (int i = 1; i < n; ++i) b(i) = i * i / (4.0 * i * i - 1.0);
  golub_welsch(a, b, 2.0, nodes, weights);
}

// Gauss-Jacobi on [-1,1] with weight (1-x)^alpha, beta = 0.
void gauss_jacobi(int n, double alpha, VectorXd& nodes, VectorXd& weights) {
  const double beta = 0.0;
  VectorXd a(n), b(n);
  const double apb = alpha + beta;
  a(0) = (beta - alpha) / (apb + 2.0);
  b(0) = 0.0;
  for (int i = 1; i < n; ++i) {
    const double den = (2.0 * i + apb) * (2.0 * i + apb + 2.0);
    a(i) = (beta * beta - alpha * alpha) / den;
    b(i) = 4.0 * i * (i + alpha) * (i + beta) * (i + apb) /
           ((2.0 * i + apb - 1.0) * (2.0 * i + apb) * (2.0 * i + apb) * (2.0 * i + apb + 1.0));
  }
  const double mu0 = std::pow(2.0, apb + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                     std::tgamma(apb + 2.0);
  golub_welsch(a, b, mu0, nodes, weights);
}

}  // namespace

SegmentRule segment_rule(int exactness) {
  if (exactness < 0) throw std::invalid_argument("segment_rule: exactness must be >= 0");
  const int n = exactness / 2 + 1;  // n-point Gauss is exact to degree 2n-1
  VectorXd x, w;
  gauss_legendre(n, x, w);
  SegmentRule rule;
  rule.points = (x.array() + 1.0) / 2.0;  // map [-1,1] -> [0,1]
  rule.weights = w / 2.0;
  rule.exactness = 2 * n - 1;
  return rule;
}

TriangleRule triangle_rule(int exactness) {
  if (exactness < 0) throw std::invalid_argument("triangle_rule: exactness must be >= 0");
  // Duffy map (u,v) in [0,1]^2 -> (u(1-v), v); the Jacobian (1-v) is absorbed
  // into a Gauss-Jacobi rule in v, so degree-d integrands stay degree d per axis.
  const int n = exactness / 2 + 1;
  VectorXd xu, wu, xv, wv;
  gauss_legendre(n, xu, wu);
  gauss_jacobi(n, 1.0, xv, wv);
  // map to [0,1]: weight (1-x)^1 on [-1,1] becomes 2(1-v) on [0,1]; mu0 scaling 1/4
  VectorXd u = (xu.array() + 1.0) / 2.0;
  VectorXd v = (xv.array() + 1.0) / 2.0;
  TriangleRule rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int q = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j, ++q) {
      rule.points(q, 0) = u(i) * (1.0 - v(j));
      rule.points(q, 1) = v(j);
      rule.weights(q) = wu(i) / 2.0 * wv(j) / 4.0;
    }
  }
  rule.exactness = 2 * n - 1;
  return rule;
}

}  // namespace curvlift
