#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reeb {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using TriId = std::uint32_t;
using TetId = std::uint32_t;

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Image of a vertex under the bivariate map. Coordinates are doubles, and
// every double is an exact rational, so these double as exact points.
struct Point2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Vertex {
  double x = 0, y = 0, z = 0;  // spatial position, carried for export only
  double f1 = 0, f2 = 0;       // the two scalar fields
};

// Tetrahedral complex with a bivariate field per vertex. Immutable once
// built; all derived indices are computed in build().
//
// Edges are stored as (lo, hi) with lo < hi and sorted lexicographically;
// triangles as sorted triples, also sorted lexicographically.
class TetMesh {
 public:
  static TetMesh build(std::vector<Vertex> vertices, std::vector<std::array<VertexId, 4>> tets);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_tets() const { return tets_.size(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<std::array<VertexId, 4>>& tets() const { return tets_; }
  const std::vector<std::array<VertexId, 2>>& edges() const { return edges_; }
  const std::vector<std::array<VertexId, 3>>& triangles() const { return triangles_; }

  Point2 image(VertexId v) const { return {vertices_[v].f1, vertices_[v].f2}; }

  std::span<const TriId> edge_triangles(EdgeId e) const { return slice(edge_tri_offset_, edge_tri_, e); }
  std::span<const TetId> edge_tets(EdgeId e) const { return slice(edge_tet_offset_, edge_tet_, e); }
  std::span<const TetId> triangle_tets(TriId t) const { return slice(tri_tet_offset_, tri_tet_, t); }
  std::span<const EdgeId> vertex_edges(VertexId v) const { return slice(vertex_edge_offset_, vertex_edge_, v); }
  const std::array<TriId, 4>& tet_triangles(TetId t) const { return tet_tri_[t]; }
  const std::array<EdgeId, 3>& triangle_edges(TriId t) const { return tri_edge_[t]; }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  std::optional<TriId> find_triangle(VertexId u, VertexId v, VertexId w) const;

  VertexId other_endpoint(EdgeId e, VertexId v) const { return edges_[e][0] == v ? edges_[e][1] : edges_[e][0]; }
  // Vertex of triangle t that is not an endpoint of edge e.
  VertexId opposite_vertex(TriId t, EdgeId e) const;

  std::size_t boundary_triangle_count() const { return boundary_triangles_; }
  bool is_closed() const { return boundary_triangles_ == 0; }

  // Same connectivity, replaced field values (one (f1, f2) per vertex).
  TetMesh with_fields(const std::vector<std::array<double, 2>>& fields) const;

 private:
  template <class T>
  static std::span<const T> slice(const std::vector<std::uint32_t>& offset, const std::vector<T>& data,
                                  std::uint32_t i) {
    return {data.data() + offset[i], data.data() + offset[i + 1]};
  }

  std::vector<Vertex> vertices_;
  std::vector<std::array<VertexId, 4>> tets_;
  std::vector<std::array<VertexId, 2>> edges_;
  std::vector<std::array<VertexId, 3>> triangles_;
  std::vector<std::array<TriId, 4>> tet_tri_;
  std::vector<std::array<EdgeId, 3>> tri_edge_;

  std::vector<std::uint32_t> edge_tri_offset_, edge_tet_offset_, tri_tet_offset_, vertex_edge_offset_;
  std::vector<TriId> edge_tri_;
  std::vector<TetId> edge_tet_;
  std::vector<TetId> tri_tet_;
  std::vector<EdgeId> vertex_edge_;
  std::size_t boundary_triangles_ = 0;
};

// Reads the TBF text format:
//   tbf 1
//   vertices N
//   x y z f1 f2        (N lines)
//   tets M
//   i j k l            (M lines, 0-based)
// Lines starting with '#' and blank lines are ignored.
TetMesh load_mesh(std::istream& in);
TetMesh load_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const TetMesh& mesh);

// Reads an ASCII legacy VTK unstructured grid holding tetrahedra and at least
// two scalar point-data arrays. The first two arrays (or the named ones)
// become f1 and f2.
TetMesh load_vtk_legacy(std::istream& in, const std::string& f1_name = {}, const std::string& f2_name = {});

struct EdgeLink {
  std::vector<VertexId> vertices;
  std::vector<std::array<VertexId, 2>> edges;
};

EdgeLink edge_link(const TetMesh& mesh, EdgeId edge);
std::size_t edge_degree(const TetMesh& mesh, EdgeId edge);

}  // namespace reeb
