#include <curvlift/curvature.hpp>

#include <curvlift/quadrature.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvlift {

namespace {

// counterclockwise boundary traversal: local edge m runs from cw[m][0] to cw[m][1]
constexpr int kCcw[3][2] = {{1, 2}, {2, 0}, {0, 1}};

PointList segment_ref_points(int sv, int ev, const VectorXd& ts) {
  const Vec2 a = ref_corner(sv), b = ref_corner(ev);
  PointList pts(ts.size(), 2);
  for (int q = 0; q < ts.size(); ++q) pts.row(q) = (a + ts(q) * (b - a)).transpose();
  return pts;
}

[[noreturn]] void rethrow_with_context(const std::exception& e, const char* where, int t,
                                       int q) {
  throw std::domain_error(std::string(where) + ": " + e.what() + " (element " +
                          std::to_string(t) + ", quadrature point " + std::to_string(q) + ")");
}

// angle defect 2 pi - sum of g-angles, per vertex
std::vector<double> vertex_angle_defects(const Mesh& mesh, const MetricField& g) {
  std::vector<double> theta(mesh.n_vertices(), 2.0 * std::numbers::pi);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    for (int v = 0; v < 3; ++v) {
      const Vec2 pv = mesh.vertices.row(mesh.triangles(t, v));
      const Vec2 pa = mesh.vertices.row(mesh.triangles(t, (v + 1) % 3));
      const Vec2 pb = mesh.vertices.row(mesh.triangles(t, (v + 2) % 3));
      const SymJet gj = g.jet(t, ref_corner(v));
      theta[mesh.triangles(t, v)] -= angle(gj.v, pa - pv, pb - pv);
    }
  }
  return theta;
}

// sum over incident sides of the geodesic curvature with inward normals, at the
// global-direction parameter points of edge e; also returns sqrt(g_tt) per point
// from the first side (the trace is tangentially continuous for Regge fields).
void edge_kappa_jump(const Mesh& mesh, const MetricField& g, int e, const VectorXd& ts,
                     VectorXd& jump, VectorXd& sqrt_gtt) {
  const int nq = static_cast<int>(ts.size());
  jump = VectorXd::Zero(nq);
  sqrt_gtt.resize(nq);
  const Vec2 tau = edge_tangent(mesh, e);
  for (int side = 0; side < 2; ++side) {
    const int t = mesh.edge_triangles[e][side];
    if (t < 0) continue;
    const ElementMap map = element_map(mesh, t);
    const int la = local_vertex_index(mesh, t, mesh.edges(e, 0));
    const int lb = local_vertex_index(mesh, t, mesh.edges(e, 1));
    const PointList pts = segment_ref_points(la, lb, ts);
    const Vec2 nu = inward_normal(mesh, e, t);
    for (int q = 0; q < nq; ++q) {
      const SymJet gj = g.jet(t, pts.row(q).transpose());
      const EdgeFrame fr = edge_frame(gj.v, tau, nu);
      jump(q) += geodesic_curvature(gj, fr);
      if (side == 0) sqrt_gtt(q) = fr.sqrt_gtt;
    }
  }
}

}  // namespace

MetricField regge_metric_field(const ReggeSpace& space, VectorXd coeffs) {
  auto c = std::make_shared<VectorXd>(std::move(coeffs));
  const ReggeSpace* sp = &space;
  const Mesh* mesh = &space.mesh();
  return MetricField{[sp, mesh, c](int t, const Vec2& xhat) {
    return regge_eval(*sp, *c, t, xhat, element_map(*mesh, t), 2);
  }};
}

MetricField analytic_metric_field(const Mesh& mesh, const AnalyticMetric& metric) {
  const Mesh* m = &mesh;
  auto jet = metric.jet;
  return MetricField{[m, jet](int t, const Vec2& xhat) {
    const ElementMap map = element_map(*m, t);
    return jet(map.origin + map.F * xhat);
  }};
}

ScalarField lagrange_scalar_field(const LagrangeSpace& space, VectorXd coeffs) {
  auto c = std::make_shared<VectorXd>(std::move(coeffs));
  const LagrangeSpace* sp = &space;
  const Mesh* mesh = &space.mesh();
  return ScalarField{[sp, mesh, c](int t, const Vec2& xhat) {
    return lagrange_eval(*sp, *c, t, xhat, element_map(*mesh, t), 2);
  }};
}

SymTensorField difference_field(const MetricField& a, const MetricField& b) {
  auto ja = a.jet, jb = b.jet;
  return SymTensorField{[ja, jb](int t, const Vec2& x) { return ja(t, x) - jb(t, x); }};
}

MetricField blended_metric_field(const MetricField& base, const SymTensorField& s, double t) {
  auto jb = base.jet, js = s.jet;
  return MetricField{[jb, js, t](int e, const Vec2& x) { return jb(e, x) + t * js(e, x); }};
}

SparseMat assemble_weighted_mass(const LagrangeSpace& V, const MetricField& g, int exactness) {
  const Mesh& mesh = V.mesh();
  const TriangleRule rule = triangle_rule(exactness);
  const ShapeTable tab = V.basis(rule.points, 0);
  const int nloc = V.n_local();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(mesh.n_triangles()) * nloc * nloc);
  MatrixXd local(nloc, nloc);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    local.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      double dens;
      try {
        dens = volume_density(g.jet(t, rule.points.row(q).transpose()).v);
      } catch (const std::domain_error& e) {
        rethrow_with_context(e, "assemble_weighted_mass", t, q);
      }
      const double w = rule.weights(q) * dens * map.detF;
      local.noalias() += w * (tab.val.row(q).transpose() * tab.val.row(q));
    }
    const auto& dofs = V.element_dofs(t);
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trip.emplace_back(dofs[i], dofs[j], local(i, j));
  }
  SparseMat M(V.n_dofs(), V.n_dofs());
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  return M;
}

VectorXd assemble_gauss_functional(const LagrangeSpace& V, const MetricField& g, int exactness) {
  const Mesh& mesh = V.mesh();
  VectorXd F = VectorXd::Zero(V.n_dofs());

  // element terms: K(g) against the volume form
  const TriangleRule rule = triangle_rule(exactness);
  const ShapeTable tab = V.basis(rule.points, 0);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    const auto& dofs = V.element_dofs(t);
    for (int q = 0; q < rule.size(); ++q) {
      SymJet gj;
      double K, dens;
      try {
        gj = g.jet(t, rule.points.row(q).transpose());
        K = gauss_curvature(gj);
        dens = volume_density(gj.v);
      } catch (const std::domain_error& e) {
        rethrow_with_context(e, "assemble_gauss_functional", t, q);
      }
      const double w = rule.weights(q) * K * dens * map.detF;
      for (int i = 0; i < V.n_local(); ++i) F(dofs[i]) += w * tab.val(q, i);
    }
  }

  // edge terms: geodesic curvature jumps, traces taken from the first side
  const SegmentRule sr = segment_rule(exactness);
  VectorXd jump, sqrt_gtt;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const int t0 = mesh.edge_triangles[e][0];
    const int la = local_vertex_index(mesh, t0, mesh.edges(e, 0));
    const int lb = local_vertex_index(mesh, t0, mesh.edges(e, 1));
    const PointList pts = segment_ref_points(la, lb, sr.points);
    const ShapeTable etab = V.basis(pts, 0);
    edge_kappa_jump(mesh, g, e, sr.points, jump, sqrt_gtt);
    const double L = edge_length(mesh, e);
    const auto& dofs = V.element_dofs(t0);
    for (int q = 0; q < sr.size(); ++q) {
      const double w = sr.weights(q) * jump(q) * sqrt_gtt(q) * L;
      for (int i = 0; i < V.n_local(); ++i) F(dofs[i]) += w * etab.val(q, i);
    }
  }

  // vertex terms: angle defects; vertex v is dof v by construction
  const std::vector<double> theta = vertex_angle_defects(mesh, g);
  for (int v = 0; v < mesh.n_vertices(); ++v) F(v) += theta[v];
  return F;
}

VectorXd assemble_neumann_functional(const LagrangeSpace& V, const AnalyticMetric& ghat,
                                     int exactness) {
  const Mesh& mesh = V.mesh();
  VectorXd N = VectorXd::Zero(V.n_dofs());
  const SegmentRule sr = segment_rule(exactness);

  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_label[e] != BoundaryLabel::neumann) continue;
    const int t0 = mesh.edge_triangles[e][0];
    const int la = local_vertex_index(mesh, t0, mesh.edges(e, 0));
    const int lb = local_vertex_index(mesh, t0, mesh.edges(e, 1));
    const PointList pts = segment_ref_points(la, lb, sr.points);
    const ShapeTable etab = V.basis(pts, 0);
    const Vec2 tau = edge_tangent(mesh, e);
    const Vec2 nu = inward_normal(mesh, e, t0);  // boundary edge: inward = into the domain
    const Vec2 A = mesh.vertices.row(mesh.edges(e, 0));
    const double L = edge_length(mesh, e);
    const auto& dofs = V.element_dofs(t0);
    for (int q = 0; q < sr.size(); ++q) {
      const Vec2 x = A + sr.points(q) * (L * tau);
      const SymJet gj = ghat.jet(x);
      const EdgeFrame fr = edge_frame(gj.v, tau, nu);
      const double kap = geodesic_curvature(gj, fr);
      const double w = sr.weights(q) * kap * fr.sqrt_gtt * L;
      for (int i = 0; i < V.n_local(); ++i) N(dofs[i]) += w * etab.val(q, i);
    }
  }

  // boundary exterior angles at vertices touching Gamma_N, measured between
  // the two boundary edge directions at the vertex
  std::vector<std::array<int, 2>> bedges(mesh.n_vertices(), {-1, -1});
  std::vector<std::uint8_t> touches_neumann(mesh.n_vertices(), 0);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_label[e] == BoundaryLabel::interior) continue;
    for (int s = 0; s < 2; ++s) {
      const int v = mesh.edges(e, s);
      if (bedges[v][0] < 0)
        bedges[v][0] = e;
      else
        bedges[v][1] = e;
      if (mesh.edge_label[e] == BoundaryLabel::neumann) touches_neumann[v] = 1;
    }
  }
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (!touches_neumann[v]) continue;
    if (bedges[v][1] < 0) throw std::runtime_error("assemble_neumann_functional: open boundary");
    const Vec2 pv = mesh.vertices.row(v);
    Vec2 dir[2];
    for (int s = 0; s < 2; ++s) {
      const int e = bedges[v][s];
      const int other = mesh.edges(e, 0) == v ? mesh.edges(e, 1) : mesh.edges(e, 0);
      dir[s] = Vec2(mesh.vertices.row(other)) - pv;
    }
    const double interior_angle = angle(ghat.jet(pv).v, dir[0], dir[1]);
    N(v) += 2.0 * std::numbers::pi - interior_angle;
  }
  return N;
}

VectorXd assemble_volume_functional(const LagrangeSpace& V, const AnalyticMetric& ghat,
                                    int exactness) {
  const Mesh& mesh = V.mesh();
  const TriangleRule rule = triangle_rule(exactness);
  const ShapeTable tab = V.basis(rule.points, 0);
  VectorXd F = VectorXd::Zero(V.n_dofs());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    const auto& dofs = V.element_dofs(t);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 x = map.origin + map.F * Vec2(rule.points.row(q).transpose());
      const double w =
          rule.weights(q) * ghat.gauss(x) * volume_density(ghat.jet(x).v) * map.detF;
      for (int i = 0; i < V.n_local(); ++i) F(dofs[i]) += w * tab.val(q, i);
    }
  }
  return F;
}

VectorXd lift_curvature(const LagrangeSpace& V, const MetricField& g_h,
                        const AnalyticMetric& ghat, int exactness, SolveReport* report) {
  const SparseMat M = assemble_weighted_mass(V, g_h, exactness);
  VectorXd b = assemble_gauss_functional(V, g_h, exactness);
  b -= assemble_neumann_functional(V, ghat, exactness);
  VectorXd dirichlet = VectorXd::Zero(V.n_dofs());
  const auto& mask = V.dirichlet_mask();
  for (int i = 0; i < V.n_dofs(); ++i)
    if (mask[i]) dirichlet(i) = ghat.gauss(V.node_position(i));
  return solve_spd(M, b, mask, dirichlet, report);
}

double gauss_bonnet_audit(const Mesh& mesh, const MetricField& g, int exactness) {
  double total = 0;

  const TriangleRule rule = triangle_rule(exactness);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    for (int q = 0; q < rule.size(); ++q) {
      const SymJet gj = g.jet(t, rule.points.row(q).transpose());
      total += rule.weights(q) * gauss_curvature(gj) * volume_density(gj.v) * map.detF;
    }
  }
  const SegmentRule sr = segment_rule(exactness);
  VectorXd jump, sqrt_gtt;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    edge_kappa_jump(mesh, g, e, sr.points, jump, sqrt_gtt);
    const double L = edge_length(mesh, e);
    for (int q = 0; q < sr.size(); ++q)
      total += sr.weights(q) * jump(q) * sqrt_gtt(q) * L;
  }
  const std::vector<double> theta = vertex_angle_defects(mesh, g);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    total += theta[v];
    if (mesh.vertex_on_boundary[v]) total -= std::numbers::pi;
  }
  return total;
}

namespace {

// shared element-side walk for the inc pairing. Callbacks receive already
// weighted values: volume_cb(t, q, xhat, w), edge_cb(t, m, q, xhat, w) per
// local edge m and quadrature point q, vertex_cb(t, v, jump) per corner.
template <class VolumeCb, class EdgeCb, class VertexCb>
void inc_pairing_walk(const Mesh& mesh, const MetricField& g, const SymTensorField& sigma,
                      int exactness, VolumeCb&& volume_cb, EdgeCb&& edge_cb,
                      VertexCb&& vertex_cb) {
  const TriangleRule rule = triangle_rule(exactness);
  const SegmentRule sr = segment_rule(exactness);

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    // volume: inc_g(sigma) against the volume form
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 xhat = rule.points.row(q).transpose();
      const SymJet gj = g.jet(t, xhat);
      const SymJet sj = sigma.jet(t, xhat);
      const double w =
          rule.weights(q) * inc_kernel(gj, sj) * volume_density(gj.v) * map.detF;
      volume_cb(t, q, xhat, w);
    }
    // edges, counterclockwise; inward normal on the left of the traversal
    for (int m = 0; m < 3; ++m) {
      const int sv = kCcw[m][0], ev = kCcw[m][1];
      const Vec2 A = mesh.vertices.row(mesh.triangles(t, sv));
      const Vec2 B = mesh.vertices.row(mesh.triangles(t, ev));
      const double L = (B - A).norm();
      const Vec2 tau = (B - A) / L;
      const Vec2 nu(-tau.y(), tau.x());
      const PointList pts = segment_ref_points(sv, ev, sr.points);
      for (int q = 0; q < sr.size(); ++q) {
        const Vec2 xhat = pts.row(q).transpose();
        const SymJet gj = g.jet(t, xhat);
        const SymJet sj = sigma.jet(t, xhat);
        const EdgeFrame fr = edge_frame(gj.v, tau, nu);
        const double kap = geodesic_curvature(gj, fr);
        const Vec2 curl = curl_kernel(gj, sj);
        const double snn = fr.nhat.dot(sj.v * fr.nhat);
        const double stt = fr.that.dot(sj.v * fr.that);
        const double integrand =
            curl.dot(fr.that) + nabla_t_sigma_nt(gj, sj, fr) + (snn - stt) * kap;
        const double w = sr.weights(q) * integrand * fr.sqrt_gtt * L;
        edge_cb(t, m, q, xhat, -w);
      }
    }
    // corners: jump of sigma(nhat, that) over the two edges meeting there
    for (int v = 0; v < 3; ++v) {
      const Vec2 xhat = ref_corner(v);
      const SymJet gj = g.jet(t, xhat);
      const SymJet sj = sigma.jet(t, xhat);
      double jump = 0;
      for (int m = 0; m < 3; ++m) {
        if (m == v) continue;
        const int o = 3 - m - v;  // the other endpoint of edge m seen from v
        const Vec2 pv = mesh.vertices.row(mesh.triangles(t, v));
        const Vec2 po = mesh.vertices.row(mesh.triangles(t, o));
        const Vec2 tau_into = (po - pv).normalized();
        const Vec2 Acc = mesh.vertices.row(mesh.triangles(t, kCcw[m][0]));
        const Vec2 Bcc = mesh.vertices.row(mesh.triangles(t, kCcw[m][1]));
        const Vec2 tcc = (Bcc - Acc).normalized();
        const Vec2 nu(-tcc.y(), tcc.x());
        const EdgeFrame fr = edge_frame(gj.v, tau_into, nu);
        jump += fr.nhat.dot(sj.v * fr.that);
      }
      vertex_cb(t, v, -jump);
    }
  }
}

}  // namespace

double distributional_inc(const Mesh& mesh, const MetricField& g, const SymTensorField& sigma,
                          const ScalarField& u, int exactness) {
  double acc = 0;
  inc_pairing_walk(
      mesh, g, sigma, exactness,
      [&](int t, int, const Vec2& xhat, double w) { acc += w * u.jet(t, xhat).v; },
      [&](int t, int, int, const Vec2& xhat, double w) { acc += w * u.jet(t, xhat).v; },
      [&](int t, int v, double jump) { acc += jump * u.jet(t, ref_corner(v)).v; });
  return acc;
}

VectorXd assemble_inc_functional(const LagrangeSpace& V, const MetricField& g,
                                 const SymTensorField& sigma, int exactness) {
  const Mesh& mesh = V.mesh();
  VectorXd F = VectorXd::Zero(V.n_dofs());
  const TriangleRule rule = triangle_rule(exactness);
  const SegmentRule sr = segment_rule(exactness);
  const ShapeTable vol_tab = V.basis(rule.points, 0);
  // per-element edge tables: three traversals share the rule parameters
  std::array<ShapeTable, 3> edge_tab;
  for (int m = 0; m < 3; ++m)
    edge_tab[m] = V.basis(segment_ref_points(kCcw[m][0], kCcw[m][1], sr.points), 0);

  inc_pairing_walk(
      mesh, g, sigma, exactness,
      [&](int t, int q, const Vec2&, double w) {
        const auto& dofs = V.element_dofs(t);
        for (int i = 0; i < V.n_local(); ++i) F(dofs[i]) += w * vol_tab.val(q, i);
      },
      [&](int t, int m, int q, const Vec2&, double w) {
        const auto& dofs = V.element_dofs(t);
        for (int i = 0; i < V.n_local(); ++i) F(dofs[i]) += w * edge_tab[m].val(q, i);
      },
      [&](int t, int v, double jump) { F(V.element_dofs(t)[v]) += jump; });
  return F;
}

std::pair<double, double> error_representation_check(const Mesh& mesh,
                                                     const AnalyticMetric& ghat,
                                                     const MetricField& g_h,
                                                     const LagrangeSpace& V, const VectorXd& u,
                                                     int t_points, int exactness) {
  const VectorXd F = assemble_gauss_functional(V, g_h, exactness) -
                     assemble_volume_functional(V, ghat, exactness);
  const double lhs = F.dot(u);

  const MetricField ghat_field = analytic_metric_field(mesh, ghat);
  const SymTensorField sigma = difference_field(g_h, ghat_field);
  const ScalarField u_field = lagrange_scalar_field(V, u);
  const SegmentRule tr = segment_rule(2 * t_points - 1);
  double rhs = 0;
  for (int q = 0; q < tr.size(); ++q) {
    const MetricField gt = blended_metric_field(ghat_field, sigma, tr.points(q));
    rhs += tr.weights(q) * distributional_inc(mesh, gt, sigma, u_field, exactness);
  }
  rhs *= -0.5;
  return {lhs, rhs};
}

double distributional_rotrot(const Mesh& mesh, const MetricField& g, const ScalarField& u,
                             const SymTensorField& sigma, int exactness) {
  const TriangleRule rule = triangle_rule(exactness);
  const SegmentRule sr = segment_rule(exactness);
  double acc = 0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementMap map = element_map(mesh, t);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 xhat = rule.points.row(q).transpose();
      const SymJet gj = g.jet(t, xhat);
      const SymJet sj = sigma.jet(t, xhat);
      const ScalarJet uj = u.jet(t, xhat);
      const Mat2 rr = rotrot_kernel(gj, uj);
      const double pair = (rr.array() * sj.v.array()).sum();
      acc += rule.weights(q) * pair * volume_density(gj.v) * map.detF;
    }
    for (int m = 0; m < 3; ++m) {
      const int sv = kCcw[m][0], ev = kCcw[m][1];
      const Vec2 A = mesh.vertices.row(mesh.triangles(t, sv));
      const Vec2 B = mesh.vertices.row(mesh.triangles(t, ev));
      const double L = (B - A).norm();
      const Vec2 tau = (B - A) / L;
      const Vec2 nu(-tau.y(), tau.x());
      const PointList pts = segment_ref_points(sv, ev, sr.points);
      for (int q = 0; q < sr.size(); ++q) {
        const Vec2 xhat = pts.row(q).transpose();
        const SymJet gj = g.jet(t, xhat);
        const SymJet sj = sigma.jet(t, xhat);
        const ScalarJet uj = u.jet(t, xhat);
        const EdgeFrame fr = edge_frame(gj.v, tau, nu);
        const double stt = fr.that.dot(sj.v * fr.that);
        const double gradn = uj.grad.dot(fr.nhat);
        acc += sr.weights(q) * stt * gradn * fr.sqrt_gtt * L;
      }
    }
  }
  return acc;
}

}  // namespace curvlift
