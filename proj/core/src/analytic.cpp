#include <curvlift/analytic.hpp>

#include <cmath>
#include <stdexcept>

namespace curvlift {

namespace {

// jet of g = delta + grad f grad f^T from the partials of f up to third order;
// fp[i], fpp[i][j], fppp[i][j][k] are the first, second and third partials.
SymJet graph_jet(const Vec2& fp, const Mat2& fpp, const double fppp[2][2][2]) {
  SymJet g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.v(i, j) = (i == j ? 1.0 : 0.0) + fp(i) * fp(j);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g.d[k](i, j) = fpp(i, k) * fp(j) + fp(i) * fpp(j, k);
  for (int l = 0; l < 2; ++l)
    for (int k = l; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          g.d2[l + k](i, j) = fppp[i][k][l] * fp(j) + fpp(i, k) * fpp(j, l) +
                              fpp(i, l) * fpp(j, k) + fp(i) * fppp[j][k][l];
  return g;
}

}  // namespace

AnalyticMetric flat_metric() {
  AnalyticMetric m;
  m.name = "flat";
  m.jet = [](const Vec2&) {
    SymJet g;
    g.v = Mat2::Identity();
    return g;
  };
  m.gauss = [](const Vec2&) { return 0.0; };
  return m;
}

AnalyticMetric sphere_patch_metric() {
  AnalyticMetric m;
  m.name = "sphere";
  m.jet = [](const Vec2& p) {
    // c = 4/(1+r^2)^2, conformal factor of stereographic projection
    const double r2 = p.squaredNorm();
    const double w = 1.0 + r2;
    const double c = 4.0 / (w * w);
    const Vec2 dc = -16.0 / (w * w * w) * p;
    Mat2 d2c;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        d2c(a, b) = 96.0 / (w * w * w * w) * p(a) * p(b) - 16.0 / (w * w * w) * (a == b ? 1.0 : 0.0);
    SymJet g;
    g.v = c * Mat2::Identity();
    for (int k = 0; k < 2; ++k) g.d[k] = dc(k) * Mat2::Identity();
    g.d2[0] = d2c(0, 0) * Mat2::Identity();
    g.d2[1] = d2c(0, 1) * Mat2::Identity();
    g.d2[2] = d2c(1, 1) * Mat2::Identity();
    return g;
  };
  m.gauss = [](const Vec2&) { return 1.0; };
  return m;
}

AnalyticMetric benchmark_metric() {
  AnalyticMetric m;
  m.name = "benchmark";
  m.jet = [](const Vec2& p) {
    const double x = p.x(), y = p.y();
    // f = (x^2+y^2)/2 - (x^4+y^4)/12; all mixed partials vanish
    const Vec2 fp(x - x * x * x / 3.0, y - y * y * y / 3.0);
    Mat2 fpp = Mat2::Zero();
    fpp(0, 0) = 1.0 - x * x;
    fpp(1, 1) = 1.0 - y * y;
    double fppp[2][2][2] = {};
    fppp[0][0][0] = -2.0 * x;
    fppp[1][1][1] = -2.0 * y;
    return graph_jet(fp, fpp, fppp);
  };
  m.gauss = [](const Vec2& p) {
    const double x = p.x(), y = p.y();
    const double den = 9.0 + x * x * std::pow(x * x - 3.0, 2) + y * y * std::pow(y * y - 3.0, 2);
    return 81.0 * (1.0 - x * x) * (1.0 - y * y) / (den * den);
  };
  return m;
}

double benchmark_kappa_neumann(const Vec2& p) {
  const double x = p.x(), y = p.y();
  const double tol = 1e-12;
  if (std::abs(y - 1.0) < tol) {  // top side (the corner (0,1) counts as top)
    const double ax = x * x * std::pow(x * x - 3.0, 2);
    const double ay = y * y * std::pow(y * y - 3.0, 2);
    return -27.0 * (x * x - 1.0) * y * (y * y - 3.0) /
           (std::pow(ax + 9.0, 1.5) * std::sqrt(ax + ay + 9.0));
  }
  if (std::abs(x) < tol) return 0.0;  // left side: a geodesic of g
  throw std::invalid_argument("benchmark_kappa_neumann: point not on the Neumann boundary");
}

}  // namespace curvlift
