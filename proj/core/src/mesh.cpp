#include <curvlift/mesh.hpp>

#include <curvlift/rng.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace curvlift {

int Mesh::n_boundary_vertices() const {
  int n = 0;
  for (auto b : vertex_on_boundary) n += (b != 0);
  return n;
}

void Mesh::write_text(std::ostream& os) const {
  os << "mesh " << n_vertices() << " vertices, " << n_triangles() << " triangles, " << n_edges()
     << " edges, level " << level << "\n";
  for (int v = 0; v < n_vertices(); ++v)
    os << "v " << v << " " << vertices(v, 0) << " " << vertices(v, 1) << "\n";
  for (int t = 0; t < n_triangles(); ++t)
    os << "t " << t << " " << triangles(t, 0) << " " << triangles(t, 1) << " " << triangles(t, 2)
       << "\n";
  for (int e = 0; e < n_edges(); ++e) {
    os << "e " << e << " " << edges(e, 0) << " " << edges(e, 1) << " ";
    switch (edge_label[e]) {
      case BoundaryLabel::interior: os << "interior"; break;
      case BoundaryLabel::dirichlet: os << "dirichlet"; break;
      case BoundaryLabel::neumann: os << "neumann"; break;
    }
    os << "\n";
  }
}

Mesh build_structured_square(int level) {
  if (level < 0 || level > 12) throw std::invalid_argument("build_structured_square: level in [0,12]");
  const int n = 1 << level;
  Mesh mesh;
  mesh.level = level;
  mesh.h_nominal = std::sqrt(2.0) / n;

  mesh.vertices.resize((n + 1) * (n + 1), 2);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const int v = j * (n + 1) + i;
      mesh.vertices(v, 0) = static_cast<double>(i) / n;
      mesh.vertices(v, 1) = static_cast<double>(j) / n;
    }

  mesh.triangles.resize(2 * n * n, 3);
  int t = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = j * (n + 1) + i;
      const int b = a + 1;
      const int c = a + n + 2;  // upper-right corner
      const int d = a + n + 1;
      mesh.triangles.row(t++) << a, b, c;  // split along the a-c diagonal
      mesh.triangles.row(t++) << a, c, d;
    }

  // edge table from sorted vertex pairs
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::array<int, 2>> inc;
  std::vector<std::pair<int, int>> pairs;
  mesh.triangle_edges.resize(mesh.n_triangles(), 3);
  for (int tt = 0; tt < mesh.n_triangles(); ++tt) {
    for (int m = 0; m < 3; ++m) {
      const auto lv = local_edge_vertices(m);
      int a = mesh.triangles(tt, lv[0]);
      int b = mesh.triangles(tt, lv[1]);
      if (a > b) std::swap(a, b);
      auto key = std::make_pair(a, b);
      auto it = ids.find(key);
      int e;
      if (it == ids.end()) {
        e = static_cast<int>(pairs.size());
        ids.emplace(key, e);
        pairs.push_back(key);
        inc.push_back({tt, -1});
      } else {
        e = it->second;
        if (inc[e][1] != -1) throw std::runtime_error("mesh: non-manifold edge");
        inc[e][1] = tt;
      }
      mesh.triangle_edges(tt, m) = e;
    }
  }
  mesh.edges.resize(static_cast<int>(pairs.size()), 2);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    mesh.edges(e, 0) = pairs[e].first;
    mesh.edges(e, 1) = pairs[e].second;
  }
  mesh.edge_triangles = std::move(inc);

  mesh.edge_label.assign(mesh.n_edges(), BoundaryLabel::interior);
  mesh.vertex_on_boundary.assign(mesh.n_vertices(), 0);
  const double eps = 0.5 / n;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_triangles[e][1] != -1) continue;
    const Vec2 a = mesh.vertices.row(mesh.edges(e, 0));
    const Vec2 b = mesh.vertices.row(mesh.edges(e, 1));
    mesh.vertex_on_boundary[mesh.edges(e, 0)] = 1;
    mesh.vertex_on_boundary[mesh.edges(e, 1)] = 1;
    // right and bottom are Dirichlet, left and top Neumann
    if (a.x() > 1.0 - eps && b.x() > 1.0 - eps)
      mesh.edge_label[e] = BoundaryLabel::dirichlet;
    else if (a.y() < eps && b.y() < eps)
      mesh.edge_label[e] = BoundaryLabel::dirichlet;
    else if (a.x() < eps && b.x() < eps)
      mesh.edge_label[e] = BoundaryLabel::neumann;
    else if (a.y() > 1.0 - eps && b.y() > 1.0 - eps)
      mesh.edge_label[e] = BoundaryLabel::neumann;
    else
      throw std::runtime_error("mesh: boundary edge not on a side of the square");
  }
  return mesh;
}

void perturb_interior(Mesh& mesh, std::uint64_t seed) {
  if (mesh.h_nominal <= 0) throw std::invalid_argument("perturb_interior: mesh has no nominal h");
  SplitMix64 rng(seed);
  const double amp = mesh.h_nominal / std::pow(2.0, 2.5);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (mesh.vertex_on_boundary[v]) continue;
    mesh.vertices(v, 0) += amp * (2.0 * rng.uniform() - 1.0);
    mesh.vertices(v, 1) += amp * (2.0 * rng.uniform() - 1.0);
  }
}

ElementMap element_map(const Mesh& mesh, int t) {
  ElementMap map;
  const Vec2 p0 = mesh.vertices.row(mesh.triangles(t, 0));
  const Vec2 p1 = mesh.vertices.row(mesh.triangles(t, 1));
  const Vec2 p2 = mesh.vertices.row(mesh.triangles(t, 2));
  map.origin = p0;
  map.F.col(0) = p1 - p0;
  map.F.col(1) = p2 - p0;
  map.detF = map.F.determinant();
  if (map.detF <= 0) throw std::runtime_error("element_map: degenerate or flipped triangle");
  map.Finv << map.F(1, 1), -map.F(0, 1), -map.F(1, 0), map.F(0, 0);
  map.Finv /= map.detF;
  return map;
}

Vec2 edge_tangent(const Mesh& mesh, int e) {
  const Vec2 a = mesh.vertices.row(mesh.edges(e, 0));
  const Vec2 b = mesh.vertices.row(mesh.edges(e, 1));
  return (b - a).normalized();
}

double edge_length(const Mesh& mesh, int e) {
  const Vec2 a = mesh.vertices.row(mesh.edges(e, 0));
  const Vec2 b = mesh.vertices.row(mesh.edges(e, 1));
  return (b - a).norm();
}

Vec2 inward_normal(const Mesh& mesh, int e, int t) {
  const Vec2 a = mesh.vertices.row(mesh.edges(e, 0));
  const Vec2 b = mesh.vertices.row(mesh.edges(e, 1));
  const Vec2 tau = (b - a).normalized();
  Vec2 nu(-tau.y(), tau.x());
  const Vec2 centroid = (mesh.vertices.row(mesh.triangles(t, 0)) +
                         mesh.vertices.row(mesh.triangles(t, 1)) +
                         mesh.vertices.row(mesh.triangles(t, 2))) /
                        3.0;
  if (nu.dot(centroid - 0.5 * (a + b)) < 0) nu = -nu;
  return nu;
}

int local_vertex_index(const Mesh& mesh, int t, int v) {
  for (int i = 0; i < 3; ++i)
    if (mesh.triangles(t, i) == v) return i;
  throw std::invalid_argument("local_vertex_index: vertex not in triangle");
}

}  // namespace curvlift
