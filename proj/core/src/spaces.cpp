#include <curvlift/spaces.hpp>

#include <curvlift/quadrature.hpp>

#include <Eigen/LU>
#include <stdexcept>

namespace curvlift {

namespace {

// contraction weights sigma : E_c for components (11, 12, 22)
constexpr double kContract[3] = {1.0, 2.0, 1.0};

double quad_form(const Mat2& m, const Vec2& d) { return d.dot(m * d); }

Mat2 from_components(double s11, double s12, double s22) {
  Mat2 m;
  m << s11, s12, s12, s22;
  return m;
}

}  // namespace

LagrangeSpace::LagrangeSpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree < 1) throw std::invalid_argument("LagrangeSpace: degree must be >= 1");
  const int r = degree;
  n_local_ = triangle_poly_size(r);
  ref_nodes_ = lagrange_nodes(r);

  // nodal basis in Bernstein coordinates: V C = I with V_im = B_m(node_i)
  const ShapeTable bt = bernstein_triangle(r, ref_nodes_, 0);
  Eigen::FullPivLU<MatrixXd> lu(bt.val);
  if (!lu.isInvertible()) throw std::runtime_error("LagrangeSpace: singular nodal Vandermonde");
  nodal_coeffs_ = lu.solve(MatrixXd::Identity(n_local_, n_local_));

  const int nV = mesh.n_vertices();
  const int nE = mesh.n_edges();
  const int nT = mesh.n_triangles();
  const int per_edge = r - 1;
  const int per_tri = (r - 1) * (r - 2) / 2;
  n_dofs_ = nV + nE * per_edge + nT * per_tri;

  element_dofs_.resize(nT);
  node_positions_.resize(n_dofs_, 2);
  for (int t = 0; t < nT; ++t) {
    auto& dofs = element_dofs_[t];
    dofs.resize(n_local_);
    const ElementMap map = element_map(mesh, t);
    int loc = 0;
    for (int i = 0; i < 3; ++i) dofs[loc++] = mesh.triangles(t, i);
    for (int m = 0; m < 3; ++m) {
      const auto lv = local_edge_vertices(m);
      const int e = mesh.triangle_edges(t, m);
      const bool flip = mesh.triangles(t, lv[0]) > mesh.triangles(t, lv[1]);
      for (int i = 0; i < per_edge; ++i) {
        const int pos = flip ? per_edge - 1 - i : i;
        dofs[loc++] = nV + e * per_edge + pos;
      }
    }
    for (int i = 0; i < per_tri; ++i) dofs[loc++] = nV + nE * per_edge + t * per_tri + i;
    for (int i = 0; i < n_local_; ++i) {
      const Vec2 x = map.origin + map.F * Vec2(ref_nodes_.row(i).transpose());
      node_positions_.row(dofs[i]) = x.transpose();
    }
  }

  dirichlet_mask_.assign(n_dofs_, 0);
  boundary_mask_.assign(n_dofs_, 0);
  for (int e = 0; e < nE; ++e) {
    if (mesh.edge_label[e] == BoundaryLabel::interior) continue;
    auto mark = [&](std::vector<std::uint8_t>& mask) {
      mask[mesh.edges(e, 0)] = 1;
      mask[mesh.edges(e, 1)] = 1;
      for (int i = 0; i < per_edge; ++i) mask[nV + e * per_edge + i] = 1;
    };
    mark(boundary_mask_);
    if (mesh.edge_label[e] == BoundaryLabel::dirichlet) mark(dirichlet_mask_);
  }
}

ShapeTable LagrangeSpace::basis(const PointList& points, int nderiv) const {
  ShapeTable bt = bernstein_triangle(degree_, points, nderiv);
  ShapeTable out;
  out.nderiv = nderiv;
  out.val = bt.val * nodal_coeffs_;
  if (nderiv >= 1)
    for (int k = 0; k < 2; ++k) out.d[k] = bt.d[k] * nodal_coeffs_;
  if (nderiv >= 2)
    for (int m = 0; m < 3; ++m) out.d2[m] = bt.d2[m] * nodal_coeffs_;
  return out;
}

VectorXd LagrangeSpace::interpolate(const std::function<double(const Vec2&)>& f) const {
  VectorXd coeffs(n_dofs_);
  for (int d = 0; d < n_dofs_; ++d) coeffs(d) = f(node_position(d));
  return coeffs;
}

ScalarJet lagrange_eval(const LagrangeSpace& space, const VectorXd& coeffs, int t,
                        const Vec2& xhat, const ElementMap& map, int nderiv) {
  PointList pts(1, 2);
  pts.row(0) = xhat.transpose();
  const ShapeTable tab = space.basis(pts, nderiv);
  const auto& dofs = space.element_dofs(t);
  ScalarJet jet;
  VectorXd local(space.n_local());
  for (int i = 0; i < space.n_local(); ++i) local(i) = coeffs(dofs[i]);
  jet.v = tab.val.row(0) * local;
  if (nderiv >= 1) {
    const Vec2 dref(tab.d[0].row(0) * local, tab.d[1].row(0) * local);
    jet.grad = map.Finv.transpose() * dref;
  }
  if (nderiv >= 2) {
    Mat2 href;
    href << tab.d2[0].row(0) * local, tab.d2[1].row(0) * local, tab.d2[1].row(0) * local,
        tab.d2[2].row(0) * local;
    jet.hess = map.Finv.transpose() * href * map.Finv;
  }
  return jet;
}

ReggeSpace::ReggeSpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("ReggeSpace: degree must be >= 0");
  const int k = degree;
  const int nb = triangle_poly_size(k);
  const int nbm = k > 0 ? triangle_poly_size(k - 1) : 0;
  n_local_ = 3 * nb;  // = 3(k+1) edge + 3 nbm interior moments

  // moment matrix of the primitive basis E_c B_m (columns p = c*nb + m)
  MatrixXd G = MatrixXd::Zero(n_local_, n_local_);
  const SegmentRule sr = segment_rule(2 * k + 1);
  for (int e = 0; e < 3; ++e) {
    const auto lv = local_edge_vertices(e);
    const Vec2 A = ref_corner(lv[0]), B = ref_corner(lv[1]);
    const Vec2 Delta = B - A;
    PointList pts(sr.size(), 2);
    for (int q = 0; q < sr.size(); ++q)
      pts.row(q) = (A + sr.points(q) * Delta).transpose();
    const ShapeTable bv = bernstein_triangle(k, pts, 0);
    const MatrixXd leg = legendre_shifted(k, sr.points);
    const double quad[3] = {Delta.x() * Delta.x(), 2.0 * Delta.x() * Delta.y(),
                            Delta.y() * Delta.y()};
    for (int j = 0; j <= k; ++j)
      for (int c = 0; c < 3; ++c)
        for (int m = 0; m < nb; ++m) {
          double s = 0;
          for (int q = 0; q < sr.size(); ++q)
            s += sr.weights(q) * leg(q, j) * bv.val(q, m);
          G(e * (k + 1) + j, c * nb + m) += quad[c] * s;
        }
  }
  if (k > 0) {
    const TriangleRule tr = triangle_rule(2 * k);
    const ShapeTable bk = bernstein_triangle(k, tr.points, 0);
    const ShapeTable bkm = bernstein_triangle(k - 1, tr.points, 0);
    for (int c = 0; c < 3; ++c)
      for (int mm = 0; mm < nbm; ++mm)
        for (int m = 0; m < nb; ++m) {
          double s = 0;
          for (int q = 0; q < tr.size(); ++q)
            s += tr.weights(q) * bkm.val(q, mm) * bk.val(q, m);
          G(3 * (k + 1) + c * nbm + mm, c * nb + m) = kContract[c] * s;
        }
  }
  Eigen::FullPivLU<MatrixXd> lu(G);
  if (!lu.isInvertible()) throw std::runtime_error("ReggeSpace: singular moment matrix");
  dual_coeffs_ = lu.solve(MatrixXd::Identity(n_local_, n_local_));

  const int nE = mesh.n_edges();
  const int nT = mesh.n_triangles();
  const int per_edge = k + 1;
  const int per_tri = 3 * nbm;
  n_dofs_ = nE * per_edge + nT * per_tri;

  element_dofs_.resize(nT);
  element_signs_.resize(nT);
  for (int t = 0; t < nT; ++t) {
    auto& dofs = element_dofs_[t];
    dofs.resize(n_local_);
    VectorXd& signs = element_signs_[t];
    signs = VectorXd::Ones(n_local_);
    int loc = 0;
    for (int m = 0; m < 3; ++m) {
      const auto lv = local_edge_vertices(m);
      const int e = mesh.triangle_edges(t, m);
      const bool flip = mesh.triangles(t, lv[0]) > mesh.triangles(t, lv[1]);
      for (int j = 0; j <= k; ++j) {
        dofs[loc] = e * per_edge + j;
        if (flip && (j % 2 == 1)) signs(loc) = -1.0;
        ++loc;
      }
    }
    for (int i = 0; i < per_tri; ++i) dofs[loc++] = nE * per_edge + t * per_tri + i;
  }
}

ReggeTable ReggeSpace::basis(const PointList& points, int nderiv) const {
  const int nb = triangle_poly_size(degree_);
  const ShapeTable bt = bernstein_triangle(degree_, points, nderiv);
  ReggeTable out;
  out.nderiv = nderiv;
  for (int c = 0; c < 3; ++c) {
    const auto block = dual_coeffs_.middleRows(c * nb, nb);
    out.val[c] = bt.val * block;
    if (nderiv >= 1)
      for (int kk = 0; kk < 2; ++kk) out.d[c][kk] = bt.d[kk] * block;
    if (nderiv >= 2)
      for (int mm = 0; mm < 3; ++mm) out.d2[c][mm] = bt.d2[mm] * block;
  }
  return out;
}

VectorXd ReggeSpace::interpolate(const std::function<Mat2(const Vec2&)>& field) const {
  const Mesh& mesh = *mesh_;
  const int k = degree_;
  const int nbm = k > 0 ? triangle_poly_size(k - 1) : 0;
  const int per_edge = k + 1;
  VectorXd coeffs = VectorXd::Zero(n_dofs_);

  const SegmentRule sr = segment_rule(2 * k + 6);
  const MatrixXd leg = legendre_shifted(k, sr.points);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Vec2 A = mesh.vertices.row(mesh.edges(e, 0));
    const Vec2 B = mesh.vertices.row(mesh.edges(e, 1));
    const Vec2 Delta = B - A;
    for (int q = 0; q < sr.size(); ++q) {
      const Vec2 x = A + sr.points(q) * Delta;
      const double tt = quad_form(field(x), Delta);
      for (int j = 0; j <= k; ++j) coeffs(e * per_edge + j) += sr.weights(q) * leg(q, j) * tt;
    }
  }
  if (k > 0) {
    const TriangleRule tr = triangle_rule(2 * k + 6);
    const ShapeTable bkm = bernstein_triangle(k - 1, tr.points, 0);
    const int base = mesh.n_edges() * per_edge;
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const ElementMap map = element_map(mesh, t);
      for (int q = 0; q < tr.size(); ++q) {
        const Vec2 x = map.origin + map.F * Vec2(tr.points.row(q).transpose());
        const Mat2 sref = map.F.transpose() * field(x) * map.F;
        const double comp[3] = {sref(0, 0), 2.0 * sref(0, 1), sref(1, 1)};
        for (int c = 0; c < 3; ++c)
          for (int mm = 0; mm < nbm; ++mm)
            coeffs(base + t * 3 * nbm + c * nbm + mm) +=
                tr.weights(q) * comp[c] * bkm.val(q, mm);
      }
    }
  }
  return coeffs;
}

double ReggeSpace::edge_moment_residual(const VectorXd& coeffs,
                                        const std::function<Mat2(const Vec2&)>& field) const {
  const Mesh& mesh = *mesh_;
  const int k = degree_;
  const SegmentRule sr = segment_rule(2 * k + 8);
  const MatrixXd leg = legendre_shifted(k, sr.points);
  double worst = 0;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const int t = mesh.edge_triangles[e][0];
    const ElementMap map = element_map(mesh, t);
    const Vec2 A = mesh.vertices.row(mesh.edges(e, 0));
    const Vec2 B = mesh.vertices.row(mesh.edges(e, 1));
    const Vec2 Delta = B - A;
    VectorXd want = VectorXd::Zero(k + 1), have = VectorXd::Zero(k + 1);
    for (int q = 0; q < sr.size(); ++q) {
      const Vec2 x = A + sr.points(q) * Delta;
      const Vec2 xhat = map.Finv * (x - map.origin);
      const double tt_field = quad_form(field(x), Delta);
      const SymJet sh = regge_eval(*this, coeffs, t, xhat, map, 0);
      const double tt_disc = quad_form(sh.v, Delta);
      for (int j = 0; j <= k; ++j) {
        want(j) += sr.weights(q) * leg(q, j) * tt_field;
        have(j) += sr.weights(q) * leg(q, j) * tt_disc;
      }
    }
    worst = std::max(worst, (want - have).cwiseAbs().maxCoeff());
  }
  return worst;
}

double ReggeSpace::interior_moment_residual(const VectorXd& coeffs,
                                            const std::function<Mat2(const Vec2&)>& field) const {
  if (degree_ == 0) return 0;
  const Mesh& mesh = *mesh_;
  const int k = degree_;
  const int nbm = triangle_poly_size(k - 1);
  const TriangleRule tr = triangle_rule(2 * k + 8);
  const ShapeTable bkm = bernstein_triangle(k - 1, tr.points, 0);
  double worst = 0;
  MatrixXd want(3, nbm), have(3, nbm);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    want.setZero();
    have.setZero();
    for (int q = 0; q < tr.size(); ++q) {
      const Vec2 xhat = tr.points.row(q).transpose();
      const Vec2 x = map.origin + map.F * xhat;
      const Mat2 fref = map.F.transpose() * field(x) * map.F;
      const Mat2 sref = map.F.transpose() * regge_eval(*this, coeffs, t, xhat, map, 0).v * map.F;
      const double fcomp[3] = {fref(0, 0), 2.0 * fref(0, 1), fref(1, 1)};
      const double scomp[3] = {sref(0, 0), 2.0 * sref(0, 1), sref(1, 1)};
      for (int c = 0; c < 3; ++c)
        for (int mm = 0; mm < nbm; ++mm) {
          want(c, mm) += tr.weights(q) * fcomp[c] * bkm.val(q, mm);
          have(c, mm) += tr.weights(q) * scomp[c] * bkm.val(q, mm);
        }
    }
    worst = std::max(worst, (want - have).cwiseAbs().maxCoeff());
  }
  return worst;
}

SymJet regge_eval(const ReggeSpace& space, const VectorXd& coeffs, int t, const Vec2& xhat,
                  const ElementMap& map, int nderiv) {
  PointList pts(1, 2);
  pts.row(0) = xhat.transpose();
  const ReggeTable tab = space.basis(pts, nderiv);
  const auto& dofs = space.element_dofs(t);
  const VectorXd& signs = space.element_signs(t);
  VectorXd local(space.n_local());
  for (int i = 0; i < space.n_local(); ++i) local(i) = coeffs(dofs[i]) * signs(i);

  const Mat2 N = map.Finv;
  SymJet jet;
  auto combine = [&](const std::array<MatrixXd, 3>& comp) {
    return from_components(comp[0].row(0) * local, comp[1].row(0) * local,
                           comp[2].row(0) * local);
  };
  jet.v = N.transpose() * combine(tab.val) * N;
  if (nderiv >= 1) {
    Mat2 dref[2];
    for (int b = 0; b < 2; ++b)
      dref[b] = from_components(tab.d[0][b].row(0) * local, tab.d[1][b].row(0) * local,
                                tab.d[2][b].row(0) * local);
    for (int a = 0; a < 2; ++a) {
      Mat2 acc = Mat2::Zero();
      for (int b = 0; b < 2; ++b) acc += N(b, a) * dref[b];
      jet.d[a] = N.transpose() * acc * N;
    }
  }
  if (nderiv >= 2) {
    Mat2 d2ref[3];
    for (int m = 0; m < 3; ++m)
      d2ref[m] = from_components(tab.d2[0][m].row(0) * local, tab.d2[1][m].row(0) * local,
                                 tab.d2[2][m].row(0) * local);
    const int pair_idx[2][2] = {{0, 1}, {1, 2}};
    for (int a = 0; a < 2; ++a)
      for (int c = a; c < 2; ++c) {
        Mat2 acc = Mat2::Zero();
        for (int b1 = 0; b1 < 2; ++b1)
          for (int b2 = 0; b2 < 2; ++b2)
            acc += N(b1, a) * N(b2, c) * d2ref[pair_idx[b1][b2]];
        jet.d2[a + c] = N.transpose() * acc * N;
      }
  }
  return jet;
}

}  // namespace curvlift
