#include <curvlift/polynomial.hpp>

#include <stdexcept>
#include <vector>

namespace curvlift {

namespace {

// barycentric gradients of (lambda0, lambda1, lambda2) on the reference triangle
constexpr double kLamGrad[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};

double multinomial(int n, int a, int b) {
  // n!/(a! b! (n-a-b)!) built incrementally to stay exact in double for n <= 20
  double r = 1.0;
  int num = n;
  for (int i = 1; i <= a; ++i) r *= static_cast<double>(num--) / i;
  for (int i = 1; i <= b; ++i) r *= static_cast<double>(num--) / i;
  return r;
}

}  // namespace

ShapeTable bernstein_triangle(int degree, const PointList& points, int nderiv) {
  if (degree < 0) throw std::invalid_argument("bernstein_triangle: degree must be >= 0");
  if (nderiv < 0 || nderiv > 2) throw std::invalid_argument("bernstein_triangle: nderiv in {0,1,2}");
  const int npts = static_cast<int>(points.rows());
  const int nb = triangle_poly_size(degree);

  ShapeTable out;
  out.nderiv = nderiv;
  out.val.resize(npts, nb);
  if (nderiv >= 1)
    for (auto& m : out.d) m.resize(npts, nb);
  if (nderiv >= 2)
    for (auto& m : out.d2) m.resize(npts, nb);

  std::vector<double> pow0(degree + 1), pow1(degree + 1), pow2(degree + 1);
  for (int q = 0; q < npts; ++q) {
    const double lam[3] = {1.0 - points(q, 0) - points(q, 1), points(q, 0), points(q, 1)};
    pow0[0] = pow1[0] = pow2[0] = 1.0;
    for (int p = 1; p <= degree; ++p) {
      pow0[p] = pow0[p - 1] * lam[0];
      pow1[p] = pow1[p - 1] * lam[1];
      pow2[p] = pow2[p - 1] * lam[2];
    }
    auto lampow = [&](int which, int p) -> double {
      if (p < 0) return 0.0;
      return which == 0 ? pow0[p] : (which == 1 ? pow1[p] : pow2[p]);
    };

    int m = 0;
    for (int s = 0; s <= degree; ++s) {
      for (int b = 0; b <= s; ++b, ++m) {
        const int a = s - b;
        const int e[3] = {degree - a - b, a, b};  // exponents of lambda0, lambda1, lambda2
        const double c = multinomial(degree, a, b);
        out.val(q, m) = c * pow0[e[0]] * pow1[e[1]] * pow2[e[2]];
        if (nderiv >= 1) {
          double dx = 0.0, dy = 0.0;
          for (int u = 0; u < 3; ++u) {
            if (e[u] == 0) continue;
            double t = e[u];
            for (int w = 0; w < 3; ++w) t *= lampow(w, w == u ? e[w] - 1 : e[w]);
            dx += t * kLamGrad[u][0];
            dy += t * kLamGrad[u][1];
          }
          out.d[0](q, m) = c * dx;
          out.d[1](q, m) = c * dy;
        }
        if (nderiv >= 2) {
          double hxx = 0.0, hxy = 0.0, hyy = 0.0;
          for (int u = 0; u < 3; ++u) {
            for (int v = 0; v < 3; ++v) {
              double t;
              if (u == v) {
                if (e[u] < 2) continue;
                t = static_cast<double>(e[u]) * (e[u] - 1);
                for (int w = 0; w < 3; ++w) t *= lampow(w, w == u ? e[w] - 2 : e[w]);
              } else {
                if (e[u] == 0 || e[v] == 0) continue;
                t = static_cast<double>(e[u]) * e[v];
                for (int w = 0; w < 3; ++w) {
                  int p = e[w];
                  if (w == u || w == v) p -= 1;
                  t *= lampow(w, p);
                }
              }
              hxx += t * kLamGrad[u][0] * kLamGrad[v][0];
              hxy += t * kLamGrad[u][0] * kLamGrad[v][1];
              hyy += t * kLamGrad[u][1] * kLamGrad[v][1];
            }
          }
          out.d2[0](q, m) = c * hxx;
          out.d2[1](q, m) = c * hxy;
          out.d2[2](q, m) = c * hyy;
        }
      }
    }
  }
  return out;
}

MatrixXd legendre_shifted(int degree, const VectorXd& points) {
  if (degree < 0) throw std::invalid_argument("legendre_shifted: degree must be >= 0");
  const int npts = static_cast<int>(points.size());
  MatrixXd P(npts, degree + 1);
  for (int q = 0; q < npts; ++q) {
    const double z = 2.0 * points(q) - 1.0;
    P(q, 0) = 1.0;
    if (degree >= 1) P(q, 1) = z;
    for (int j = 1; j < degree; ++j)
      P(q, j + 1) = ((2.0 * j + 1.0) * z * P(q, j) - j * P(q, j - 1)) / (j + 1.0);
  }
  return P;
}

PointList lagrange_nodes(int degree) {
  if (degree < 1) throw std::invalid_argument("lagrange_nodes: degree must be >= 1");
  const int r = degree;
  const int n = triangle_poly_size(r);
  PointList nodes(n, 2);
  const Vec2 v[3] = {Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  int m = 0;
  for (int i = 0; i < 3; ++i) nodes.row(m++) = v[i].transpose();
  const int epair[3][2] = {{1, 2}, {0, 2}, {0, 1}};  // edge e opposite vertex e
  for (int e = 0; e < 3; ++e) {
    for (int i = 1; i < r; ++i) {
      const double t = static_cast<double>(i) / r;
      nodes.row(m++) = ((1.0 - t) * v[epair[e][0]] + t * v[epair[e][1]]).transpose();
    }
  }
  for (int s = 2; s <= r - 1; ++s) {
    for (int b = 1; b < s; ++b) {
      const int a = s - b;
      nodes(m, 0) = static_cast<double>(a) / r;
      nodes(m, 1) = static_cast<double>(b) / r;
      ++m;
    }
  }
  return nodes;
}

}  // namespace curvlift
