#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <curvlift/rng.hpp>
#include <curvlift/spaces.hpp>
#include <curvlift/study.hpp>

#include <cmath>

using namespace curvlift;

namespace {

Mesh perturbed_mesh(int level, std::uint64_t seed) {
  Mesh mesh = build_structured_square(level);
  perturb_interior(mesh, seed);
  return mesh;
}

PointList sample_points(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PointList pts(count, 2);
  for (int i = 0; i < count; ++i) {
    double x = rng.uniform(), y = rng.uniform();
    if (x + y > 1) {
      x = 1 - x;
      y = 1 - y;
    }
    pts.row(i) << x, y;
  }
  return pts;
}

}  // namespace

TEST_CASE("Lagrange: dimensions match the closed form") {
  for (int r = 1; r <= 4; ++r)
    for (int level = 0; level <= 3; ++level) {
      const Mesh mesh = build_structured_square(level);
      const LagrangeSpace V(mesh, r);
      const std::int64_t expect = lagrange_dimension(r, level);
      const std::int64_t side = std::int64_t(r) * (1 << level) + 1;
      CHECK(expect == side * side);
      CHECK(V.n_dofs() == expect);
      CHECK(V.n_local() == triangle_poly_size(r));
    }
}

TEST_CASE("Lagrange: nodal basis property") {
  const Mesh mesh = build_structured_square(0);
  for (int r = 1; r <= 4; ++r) {
    const LagrangeSpace V(mesh, r);
    const ShapeTable tab = V.basis(lagrange_nodes(r), 0);
    CHECK((tab.val - MatrixXd::Identity(V.n_local(), V.n_local())).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("Lagrange: dof map consistent with nodal positions") {
  const Mesh mesh = perturbed_mesh(2, 5);
  for (int r : {1, 3}) {
    const LagrangeSpace V(mesh, r);
    const PointList nodes = lagrange_nodes(r);
    std::vector<int> seen(V.n_dofs(), 0);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const ElementMap map = element_map(mesh, t);
      const auto& dofs = V.element_dofs(t);
      REQUIRE(int(dofs.size()) == V.n_local());
      for (int i = 0; i < V.n_local(); ++i) {
        const Vec2 x = map.origin + map.F * Vec2(nodes.row(i));
        CHECK((V.node_position(dofs[i]) - x).norm() < 1e-12);
        seen[dofs[i]] = 1;
      }
    }
    for (int i = 0; i < V.n_dofs(); ++i) CHECK(seen[i] == 1);
  }
}

TEST_CASE("Lagrange: boundary masks match nodal positions") {
  const Mesh mesh = perturbed_mesh(2, 9);
  const LagrangeSpace V(mesh, 2);
  const double tol = 1e-12;  // nodes come through the affine map, up to rounding
  for (int i = 0; i < V.n_dofs(); ++i) {
    const Vec2 p = V.node_position(i);
    const bool on_dirichlet = std::abs(p.x() - 1.0) < tol || std::abs(p.y()) < tol;
    const bool on_boundary =
        on_dirichlet || std::abs(p.x()) < tol || std::abs(p.y() - 1.0) < tol;
    CHECK(bool(V.dirichlet_mask()[i]) == on_dirichlet);
    CHECK(bool(V.boundary_mask()[i]) == on_boundary);
  }
}

TEST_CASE("Lagrange: interpolation reproduces degree r polynomials") {
  const Mesh mesh = perturbed_mesh(1, 17);
  for (int r = 1; r <= 3; ++r) {
    const LagrangeSpace V(mesh, r);
    const auto poly = [r](const Vec2& p) {
      double val = 1.0 + 0.5 * p.x() - 0.25 * p.y();
      if (r >= 2) val += 0.75 * p.x() * p.y() - 0.5 * p.y() * p.y();
      if (r >= 3) val += 0.3 * p.x() * p.x() * p.y();
      return val;
    };
    const VectorXd coeffs = V.interpolate(poly);
    const PointList pts = sample_points(10, 23);
    for (int t = 0; t < mesh.n_triangles(); t += 3) {
      const ElementMap map = element_map(mesh, t);
      for (int q = 0; q < pts.rows(); ++q) {
        const Vec2 xhat = pts.row(q);
        const ScalarJet jet = lagrange_eval(V, coeffs, t, xhat, map, 0);
        CHECK(jet.v == doctest::Approx(poly(map.origin + map.F * xhat)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Lagrange: jets match finite differences of values") {
  const Mesh mesh = perturbed_mesh(1, 31);
  const LagrangeSpace V(mesh, 3);
  SplitMix64 rng(77);
  VectorXd coeffs(V.n_dofs());
  for (int i = 0; i < V.n_dofs(); ++i) coeffs(i) = rng.symmetric();
  const ElementMap map = element_map(mesh, 2);
  const Vec2 xhat(0.31, 0.4);
  const ScalarJet jet = lagrange_eval(V, coeffs, 2, xhat, map, 2);
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    // physical-coordinate step, pulled back through the element map
    Vec2 step = Vec2::Zero();
    step(k) = h;
    const Vec2 xp = xhat + map.Finv * step, xm = xhat - map.Finv * step;
    const ScalarJet jp = lagrange_eval(V, coeffs, 2, xp, map, 1);
    const ScalarJet jm = lagrange_eval(V, coeffs, 2, xm, map, 1);
    CHECK(jet.grad(k) == doctest::Approx((jp.v - jm.v) / (2 * h)).epsilon(1e-7));
    for (int l = 0; l < 2; ++l)
      CHECK(jet.hess(l, k) ==
            doctest::Approx((jp.grad(l) - jm.grad(l)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("Regge: dimensions match the closed form") {
  for (int k = 0; k <= 3; ++k)
    for (int level = 0; level <= 2; ++level) {
      const Mesh mesh = build_structured_square(level);
      const ReggeSpace R(mesh, k);
      CHECK(R.n_dofs() == (k + 1) * mesh.n_edges() + 3 * k * (k + 1) / 2 * mesh.n_triangles());
      CHECK(R.n_dofs() == regge_dimension(k, level));
      CHECK(R.n_local() == 3 * (k + 1) + 3 * k * (k + 1) / 2);
      CHECK(R.n_edge_dofs() == k + 1);
    }
}

TEST_CASE("Regge: frozen lowest order reference dual basis") {
  const Mesh mesh = build_structured_square(0);
  const ReggeSpace R(mesh, 0);
  PointList pts(1, 2);
  pts << 0.25, 0.25;
  const ReggeTable tab = R.basis(pts, 0);
  // constant local shapes, one per local edge: s11, s12, s22 rows
  const double expect[3][3] = {{0.0, -0.5, 0.0}, {0.0, 0.5, 1.0}, {1.0, 0.5, 0.0}};
  for (int j = 0; j < 3; ++j) {
    CHECK(tab.val[0](0, j) == doctest::Approx(expect[j][0]).epsilon(1e-14));
    CHECK(tab.val[1](0, j) == doctest::Approx(expect[j][1]).epsilon(1e-14));
    CHECK(tab.val[2](0, j) == doctest::Approx(expect[j][2]).epsilon(1e-14));
  }
}

TEST_CASE("Regge: tangential-tangential continuity across interior edges") {
  const Mesh mesh = perturbed_mesh(2, 3);
  for (int k = 0; k <= 3; ++k) {
    const ReggeSpace R(mesh, k);
    SplitMix64 rng(100 + k);
    VectorXd coeffs(R.n_dofs());
    for (int i = 0; i < R.n_dofs(); ++i) coeffs(i) = rng.symmetric();
    for (int e = 0; e < mesh.n_edges(); ++e) {
      if (mesh.edge_label[e] != BoundaryLabel::interior) continue;
      const Vec2 a = mesh.vertices.row(mesh.edges(e, 0));
      const Vec2 b = mesh.vertices.row(mesh.edges(e, 1));
      const Vec2 tau = edge_tangent(mesh, e);
      for (double s : {0.2, 0.5, 0.9}) {
        const Vec2 p = a + s * (b - a);
        double val[2];
        for (int side = 0; side < 2; ++side) {
          const int t = mesh.edge_triangles[e][side];
          const ElementMap map = element_map(mesh, t);
          const Vec2 xhat = map.Finv * (p - map.origin);
          val[side] = tau.dot(regge_eval(R, coeffs, t, xhat, map, 0).v * tau);
        }
        CHECK(val[0] == doctest::Approx(val[1]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Regge: interpolation reproduces polynomial tensor fields") {
  const Mesh mesh = perturbed_mesh(1, 19);
  const auto field = [](const Vec2& p) {
    Mat2 s;
    const double x = p.x(), y = p.y();
    s << 1 + x * x + 0.5 * x * y, x * y - 0.3 * y * y, x * y - 0.3 * y * y,
        2 + y * y - 0.7 * x * x;
    return s;
  };
  for (int k = 2; k <= 3; ++k) {
    const ReggeSpace R(mesh, k);
    const VectorXd coeffs = R.interpolate(field);
    const PointList pts = sample_points(8, 41);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const ElementMap map = element_map(mesh, t);
      for (int q = 0; q < pts.rows(); ++q) {
        const Vec2 xhat = pts.row(q);
        const Mat2 got = regge_eval(R, coeffs, t, xhat, map, 0).v;
        CHECK((got - field(map.origin + map.F * xhat)).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
    CHECK(R.edge_moment_residual(coeffs, field) < 1e-12);
    CHECK(R.interior_moment_residual(coeffs, field) < 1e-12);
  }
}

TEST_CASE("Regge: element signs flip only shared edge moments") {
  const Mesh mesh = build_structured_square(1);
  const ReggeSpace R(mesh, 2);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const VectorXd& signs = R.element_signs(t);
    REQUIRE(signs.size() == R.n_local());
    for (int i = 0; i < R.n_local(); ++i) CHECK(std::abs(std::abs(signs(i)) - 1.0) < 1e-15);
    // interior moments are never sign flipped
    for (int i = 3 * R.n_edge_dofs(); i < R.n_local(); ++i) CHECK(signs(i) == 1.0);
  }
}
