#ifndef CURVLIFT_MESH_HPP
#define CURVLIFT_MESH_HPP

#include <curvlift/types.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace curvlift {

enum class BoundaryLabel : std::uint8_t { interior = 0, dirichlet = 1, neumann = 2 };

/// Conforming triangle mesh of the unit square. Triangles are counterclockwise;
/// edges are stored with ascending vertex indices (lo, hi), which fixes the
/// global edge orientation used by all tangential degrees of freedom.
/// Local edge m of a triangle is the edge opposite local vertex m.
struct Mesh {
  PointList vertices;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;
  Eigen::Matrix<int, Eigen::Dynamic, 2> edges;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangle_edges;     // edge id per local edge
  std::vector<std::array<int, 2>> edge_triangles;           // incident triangles, -1 if absent
  std::vector<BoundaryLabel> edge_label;
  std::vector<std::uint8_t> vertex_on_boundary;
  int level = -1;       // refinement level for structured meshes
  double h_nominal = 0; // sqrt(2) * 2^-level, the unperturbed max diameter

  int n_vertices() const { return static_cast<int>(vertices.rows()); }
  int n_triangles() const { return static_cast<int>(triangles.rows()); }
  int n_edges() const { return static_cast<int>(edges.rows()); }
  int n_boundary_vertices() const;

  /// Plain-text dump (counts, then vertices, triangles, labeled edges).
  void write_text(std::ostream& os) const;
};

/// Local vertex coordinates of the reference triangle.
inline Vec2 ref_corner(int i) {
  constexpr double c[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  return Vec2(c[i][0], c[i][1]);
}

/// Local edge m is opposite vertex m; pairs are in ascending local index order.
inline std::array<int, 2> local_edge_vertices(int m) {
  constexpr int e[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  return {e[m][0], e[m][1]};
}

/// Structured mesh of (0,1)^2 at the given refinement level: a 2^level x 2^level
/// grid of squares, each split along the diagonal from its lower-left to its
/// upper-right corner, giving 2^(2*level+1) triangles. Boundary edges on the
/// right and bottom sides are labeled Dirichlet, left and top Neumann.
Mesh build_structured_square(int level);

/// Displaces every interior vertex by independent uniform draws in
/// [-h/2^2.5, h/2^2.5] per coordinate, h the nominal diameter of the mesh.
/// Randomness comes from SplitMix64 seeded with `seed`, consumed in vertex
/// index order (two draws per interior vertex), so results are reproducible
/// bit for bit. Boundary vertices are left in place.
void perturb_interior(Mesh& mesh, std::uint64_t seed);

/// Affine map x = origin + F x_ref of a triangle. det F = 2 |T| > 0.
struct ElementMap {
  Vec2 origin;
  Mat2 F;
  Mat2 Finv;
  double detF;
};

ElementMap element_map(const Mesh& mesh, int t);

/// Euclidean unit tangent of an edge in its global (lo -> hi) direction.
Vec2 edge_tangent(const Mesh& mesh, int e);

/// Euclidean edge length.
double edge_length(const Mesh& mesh, int e);

/// Euclidean unit normal of edge e pointing into triangle t (t must be incident).
Vec2 inward_normal(const Mesh& mesh, int e, int t);

/// Local index (0..2) of vertex v in triangle t; throws if not a corner.
int local_vertex_index(const Mesh& mesh, int t, int v);

}  // namespace curvlift

#endif
