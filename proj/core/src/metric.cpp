#include <curvlift/metric.hpp>

#include <cmath>
#include <stdexcept>

namespace curvlift {

namespace {

constexpr double kEps[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};  // eps^{12} = +1

Mat2 inverse_spd(const Mat2& g, double& det) {
  det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (!(det > 0) || !(g(0, 0) > 0)) throw std::domain_error("metric: matrix not positive definite");
  Mat2 gi;
  gi << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  return gi / det;
}

}  // namespace

SymJet& SymJet::operator+=(const SymJet& o) {
  v += o.v;
  for (int k = 0; k < 2; ++k) d[k] += o.d[k];
  for (int m = 0; m < 3; ++m) d2[m] += o.d2[m];
  return *this;
}
SymJet& SymJet::operator-=(const SymJet& o) {
  v -= o.v;
  for (int k = 0; k < 2; ++k) d[k] -= o.d[k];
  for (int m = 0; m < 3; ++m) d2[m] -= o.d2[m];
  return *this;
}
SymJet& SymJet::operator*=(double a) {
  v *= a;
  for (int k = 0; k < 2; ++k) d[k] *= a;
  for (int m = 0; m < 3; ++m) d2[m] *= a;
  return *this;
}
SymJet operator+(SymJet a, const SymJet& b) { return a += b; }
SymJet operator-(SymJet a, const SymJet& b) { return a -= b; }
SymJet operator*(double a, SymJet s) { return s *= a; }

Christoffel christoffel(const SymJet& g) {
  double det;
  const Mat2 gi = inverse_spd(g.v, det);
  Christoffel c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double s = 0;
        for (int l = 0; l < 2; ++l)
          s += gi(i, l) * (g.d[j](l, k) + g.d[k](l, j) - g.d[l](j, k));
        c.G[i][j][k] = 0.5 * s;
      }
  return c;
}

ChristoffelJet christoffel_jet(const SymJet& g) {
  double det;
  const Mat2 gi = inverse_spd(g.v, det);
  ChristoffelJet out;
  out.ch = christoffel(g);
  // d2 index for the pair (a,b): xx=0, xy=1, yy=2
  auto dd = [&](int a, int b, int i, int j) { return g.d2[a + b](i, j); };
  // d_d g^{il} = -g^{ia} (d_d g_ab) g^{bl}
  Mat2 dgi[2];
  for (int d = 0; d < 2; ++d) dgi[d] = -gi * g.d[d] * gi;
  for (int d = 0; d < 2; ++d)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          double s = 0;
          for (int l = 0; l < 2; ++l) {
            s += dgi[d](i, l) * (g.d[j](l, k) + g.d[k](l, j) - g.d[l](j, k));
            s += gi(i, l) * (dd(d, j, l, k) + dd(d, k, l, j) - dd(d, l, j, k));
          }
          out.dG[d][i][j][k] = 0.5 * s;
        }
  return out;
}

double volume_density(const Mat2& g) {
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (!(det > 0) || !(g(0, 0) > 0)) throw std::domain_error("volume_density: metric not positive definite");
  return std::sqrt(det);
}

double gauss_curvature(const SymJet& g) {
  double det;
  const Mat2 gi = inverse_spd(g.v, det);
  (void)gi;
  const ChristoffelJet cj = christoffel_jet(g);
  const auto& G = cj.ch.G;
  double K = 0;
  for (int l = 0; l < 2; ++l) {
    double term = cj.dG[0][l][1][1] - cj.dG[1][l][0][1];
    for (int m = 0; m < 2; ++m) term += G[l][0][m] * G[m][1][1] - G[l][1][m] * G[m][0][1];
    K += g.v(l, 0) * term;
  }
  return K / det;
}

EdgeFrame edge_frame(const Mat2& g, const Vec2& tau, const Vec2& nu) {
  double det;
  const Mat2 gi = inverse_spd(g, det);
  EdgeFrame fr;
  fr.tau = tau;
  fr.nu = nu;
  fr.sqrt_gtt = std::sqrt(tau.dot(g * tau));
  fr.that = tau / fr.sqrt_gtt;
  const Vec2 gn = gi * nu;
  fr.nhat = gn / std::sqrt(nu.dot(gn));
  return fr;
}

double geodesic_curvature(const SymJet& g, const EdgeFrame& fr) {
  const Christoffel c = christoffel(g);
  // g(nabla_that that, nhat); the d/ds(1/|tau|_g) term is parallel to that and
  // g(that, nhat) = 0, so only the Christoffel part survives.
  double kappa = 0;
  for (int i = 0; i < 2; ++i) {
    double nab = 0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) nab += c.G[i][j][k] * fr.that(j) * fr.that(k);
    for (int l = 0; l < 2; ++l) kappa += g.v(i, l) * nab * fr.nhat(l);
  }
  return kappa;
}

double angle(const Mat2& g, const Vec2& t1, const Vec2& t2) {
  const double num = t1.dot(g * t2);
  const double den = std::sqrt(t1.dot(g * t1) * t2.dot(g * t2));
  if (!(den > 0)) throw std::domain_error("angle: degenerate directions");
  double c = num / den;
  c = std::min(1.0, std::max(-1.0, c));
  return std::acos(c);
}

Vec2 curl_kernel(const SymJet& g, const SymJet& sigma) {
  double det;
  const Mat2 gi = inverse_spd(g.v, det);
  (void)gi;
  const Christoffel c = christoffel(g);
  const double sq = std::sqrt(det);
  Vec2 out;
  for (int i = 0; i < 2; ++i) {
    double s = 0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (kEps[j][k] == 0.0) continue;
        double t = sigma.d[j](i, k);
        for (int m = 0; m < 2; ++m) t -= c.G[m][j][i] * sigma.v(m, k);
        s += kEps[j][k] * t;
      }
    out(i) = s / sq;
  }
  return out;
}

double inc_kernel(const SymJet& g, const SymJet& sigma) {
  double det;
  const Mat2 gi = inverse_spd(g.v, det);
  (void)gi;
  const ChristoffelJet cj = christoffel_jet(g);
  const auto& G = cj.ch.G;
  auto d2s = [&](int a, int b, int i, int k) { return sigma.d2[a + b](i, k); };
  double acc = 0;
  for (int q = 0; q < 2; ++q) {
    // G^l_{lq} at this point
    double trG = G[0][0][q] + G[1][1][q];
    for (int i = 0; i < 2; ++i) {
      if (kEps[q][i] == 0.0) continue;
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          if (kEps[j][k] == 0.0) continue;
          double gam = 0, dgam = 0;
          for (int m = 0; m < 2; ++m) {
            gam += G[m][j][i] * sigma.v(m, k);
            dgam += cj.dG[q][m][j][i] * sigma.v(m, k) + G[m][j][i] * sigma.d[q](m, k);
          }
          const double inner = sigma.d[j](i, k) - gam;
          const double t = d2s(j, q, i, k) - dgam - trG * inner;
          acc += kEps[q][i] * kEps[j][k] * t;
        }
    }
  }
  return acc / det;
}

Mat2 rotrot_kernel(const SymJet& g, const ScalarJet& u) {
  double det;
  const Mat2 gi = inverse_spd(g.v, det);
  (void)gi;
  const Christoffel c = christoffel(g);
  // Euclidean proxies
  double rot[2];
  for (int i = 0; i < 2; ++i) rot[i] = kEps[i][0] * u.grad(0) + kEps[i][1] * u.grad(1);
  auto drot = [&](int i, int k) {  // d_k [rot u]^i
    return kEps[i][0] * u.hess(k, 0) + kEps[i][1] * u.hess(k, 1);
  };
  Mat2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double t = 0;
      for (int k = 0; k < 2; ++k) t += kEps[j][k] * drot(i, k);
      for (int q = 0; q < 2; ++q) {
        if (kEps[j][q] == 0.0) continue;
        const double trG = c.G[0][0][q] + c.G[1][1][q];
        t -= rot[i] * kEps[j][q] * trG;
        for (int k = 0; k < 2; ++k) t += kEps[j][q] * c.G[i][q][k] * rot[k];
      }
      out(i, j) = t / det;
    }
  return out;
}

double nabla_t_sigma_nt(const SymJet& g, const SymJet& sigma, const EdgeFrame& fr) {
  const Christoffel c = christoffel(g);
  double acc = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double s = 0;
      for (int k = 0; k < 2; ++k) {
        double t = sigma.d[k](a, b);
        for (int m = 0; m < 2; ++m) t -= c.G[m][k][a] * sigma.v(m, b) + c.G[m][k][b] * sigma.v(a, m);
        s += fr.that(k) * t;
      }
      acc += fr.nhat(a) * s * fr.that(b);
    }
  return acc;
}

}  // namespace curvlift
