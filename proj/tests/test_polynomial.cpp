#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <curvlift/mesh.hpp>
#include <curvlift/polynomial.hpp>
#include <curvlift/quadrature.hpp>
#include <curvlift/rng.hpp>

#include <cmath>

using namespace curvlift;

namespace {

PointList random_interior_points(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PointList pts(count, 2);
  for (int i = 0; i < count; ++i) {
    double x = 0.8 * rng.uniform() + 0.05, y = 0.8 * rng.uniform() + 0.05;
    if (x + y > 0.9) {
      x *= 0.45;
      y *= 0.45;
    }
    pts.row(i) << x, y;
  }
  return pts;
}

}  // namespace

TEST_CASE("triangle_poly_size") {
  CHECK(triangle_poly_size(0) == 1);
  CHECK(triangle_poly_size(1) == 3);
  CHECK(triangle_poly_size(2) == 6);
  CHECK(triangle_poly_size(5) == 21);
}

TEST_CASE("bernstein: partition of unity with vanishing derivative sums") {
  const PointList pts = random_interior_points(12, 7);
  for (int degree = 0; degree <= 5; ++degree) {
    const ShapeTable tab = bernstein_triangle(degree, pts, 2);
    CHECK(tab.val.cols() == triangle_poly_size(degree));
    for (int q = 0; q < pts.rows(); ++q) {
      CHECK(tab.val.row(q).sum() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(tab.val.row(q).minCoeff() >= 0.0);
      for (int k = 0; k < 2; ++k) CHECK(std::abs(tab.d[k].row(q).sum()) < 1e-13);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(tab.d2[k].row(q).sum()) < 1e-12);
    }
  }
}

TEST_CASE("bernstein: frozen degree 1 and 2 values") {
  PointList pts(1, 2);
  pts << 0.2, 0.3;
  const ShapeTable lin = bernstein_triangle(1, pts, 0);
  CHECK(lin.val(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lin.val(0, 1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(lin.val(0, 2) == doctest::Approx(0.3).epsilon(1e-15));
  // graded lexicographic order of (a+b, b): 00, 10, 11, 20, 21, 22
  const ShapeTable quad = bernstein_triangle(2, pts, 0);
  const double expect[6] = {0.25, 0.2, 0.3, 0.04, 0.12, 0.09};
  for (int j = 0; j < 6; ++j) CHECK(quad.val(0, j) == doctest::Approx(expect[j]).epsilon(1e-14));
}

TEST_CASE("bernstein: derivatives match finite differences") {
  const int degree = 3;
  const PointList pts = random_interior_points(6, 21);
  const ShapeTable tab = bernstein_triangle(degree, pts, 2);
  const double h = 1e-6;
  for (int q = 0; q < pts.rows(); ++q)
    for (int k = 0; k < 2; ++k) {
      PointList plus = pts, minus = pts;
      plus(q, k) += h;
      minus(q, k) -= h;
      const ShapeTable tp = bernstein_triangle(degree, plus, 1);
      const ShapeTable tm = bernstein_triangle(degree, minus, 1);
      for (int j = 0; j < tab.val.cols(); ++j) {
        const double fd = (tp.val(q, j) - tm.val(q, j)) / (2 * h);
        CHECK(tab.d[k](q, j) == doctest::Approx(fd).epsilon(1e-7));
        // d2 ordering xx, xy, yy: differentiate d[0] by k, then d[1] by y
        const double fd0 = (tp.d[0](q, j) - tm.d[0](q, j)) / (2 * h);
        const int idx0 = k == 0 ? 0 : 1;
        CHECK(tab.d2[idx0](q, j) == doctest::Approx(fd0).epsilon(1e-7));
        const double fd1 = (tp.d[1](q, j) - tm.d[1](q, j)) / (2 * h);
        const int idx1 = k == 0 ? 1 : 2;
        CHECK(tab.d2[idx1](q, j) == doctest::Approx(fd1).epsilon(1e-7));
      }
    }
}

TEST_CASE("shifted Legendre: endpoint normalization, parity, orthogonality") {
  const int degree = 6;
  VectorXd one(1);
  one << 1.0;
  const MatrixXd at_one = legendre_shifted(degree, one);
  for (int j = 0; j <= degree; ++j) CHECK(at_one(0, j) == doctest::Approx(1.0).epsilon(1e-14));

  SplitMix64 rng(3);
  VectorXd ts(8), rs(8);
  for (int i = 0; i < 8; ++i) {
    ts(i) = rng.uniform();
    rs(i) = 1.0 - ts(i);
  }
  const MatrixXd pt = legendre_shifted(degree, ts);
  const MatrixXd pr = legendre_shifted(degree, rs);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j <= degree; ++j)
      CHECK(pr(i, j) == doctest::Approx((j % 2 ? -1.0 : 1.0) * pt(i, j)).epsilon(1e-12));

  CHECK(pt(0, 1) == doctest::Approx(2 * ts(0) - 1).epsilon(1e-13));
  CHECK(pt(0, 2) == doctest::Approx(6 * ts(0) * ts(0) - 6 * ts(0) + 1).epsilon(1e-13));

  const SegmentRule sr = segment_rule(2 * degree);
  const MatrixXd pq = legendre_shifted(degree, sr.points);
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; j <= degree; ++j) {
      const double ip = (sr.weights.array() * pq.col(i).array() * pq.col(j).array()).sum();
      const double expect = i == j ? 1.0 / (2 * i + 1) : 0.0;
      CHECK(ip == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("lagrange_nodes: count, corner order, edge and interior placement") {
  for (int r = 1; r <= 4; ++r) {
    const PointList nodes = lagrange_nodes(r);
    REQUIRE(nodes.rows() == triangle_poly_size(r));
    for (int i = 0; i < 3; ++i) CHECK((Vec2(nodes.row(i)) - ref_corner(i)).norm() < 1e-14);
    // r-1 nodes per local edge m (opposite vertex m), walked lower to higher
    // local index, then interior nodes
    int idx = 3;
    for (int m = 0; m < 3; ++m) {
      const auto [la, lb] = local_edge_vertices(m);
      const Vec2 a = ref_corner(la), b = ref_corner(lb);
      for (int i = 1; i < r; ++i, ++idx) {
        const Vec2 expect = a + (b - a) * (double(i) / r);
        CHECK((Vec2(nodes.row(idx)) - expect).norm() < 1e-13);
      }
    }
    for (; idx < nodes.rows(); ++idx) {
      const double x = nodes(idx, 0), y = nodes(idx, 1);
      CHECK(x > 0);
      CHECK(y > 0);
      CHECK(x + y < 1);
    }
    for (int i = 0; i < nodes.rows(); ++i)
      for (int j = i + 1; j < nodes.rows(); ++j)
        CHECK((nodes.row(i) - nodes.row(j)).norm() > 1e-3);
  }
}
