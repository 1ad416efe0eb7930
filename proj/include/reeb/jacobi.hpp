#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "reeb/arrangement.hpp"
#include "reeb/deadline.hpp"
#include "reeb/exact.hpp"
#include "reeb/mesh.hpp"

namespace reeb {

// Upper/lower split of an edge's link. Upper vertices v have
// orient2d(f(a), f(b), f(v)) > 0 with a < b.
struct LinkPartition {
  EdgeId edge = kNone;
  std::vector<VertexId> upper, lower;
  std::vector<std::array<VertexId, 2>> upper_edges, lower_edges;
  std::uint32_t upper_components = 0;
  std::uint32_t lower_components = 0;
};

LinkPartition split_link(const TetMesh& mesh, EdgeId edge);

enum class EdgeType : std::uint8_t { Regular, Definite, Indefinite };
const char* to_string(EdgeType t);

struct EdgeClass {
  EdgeId edge = kNone;
  EdgeType type = EdgeType::Regular;
  std::uint32_t upper_components = 0;
  std::uint32_t lower_components = 0;

  bool singular() const { return type != EdgeType::Regular; }
  bool simple() const {
    return type == EdgeType::Indefinite && std::max(upper_components, lower_components) == 2 &&
           std::min(upper_components, lower_components) >= 1;
  }
};

EdgeClass classify(const LinkPartition& link);

struct SingularSet {
  std::vector<EdgeId> singular_edges;     // sorted
  std::vector<VertexId> singular_vertices;  // sorted
  std::vector<EdgeId> pseudo_edges;       // sorted, disjoint from singular_edges

  bool contains(EdgeId e) const;
  // Segments of singular then pseudo-singular edges, by edge id within each group.
  std::vector<RangeSegment> segments(const TetMesh& mesh) const;
};

// Triangles {a, b, v} around every edge ab, split by the side of f(v).
class LinkTable {
 public:
  static LinkTable build(const TetMesh& mesh);

  std::span<const TriId> upper(EdgeId e) const { return {tri_.data() + offset_[e], tri_.data() + split_[e]}; }
  std::span<const TriId> lower(EdgeId e) const { return {tri_.data() + split_[e], tri_.data() + offset_[e + 1]}; }

 private:
  std::vector<std::uint32_t> offset_, split_;
  std::vector<TriId> tri_;
};

struct Classification {
  std::vector<EdgeClass> classes;  // indexed by edge id
  SingularSet singular;
  LinkTable links;
};

// Throws DegenerateOrientation if some link vertex is collinear with its edge.
Classification classify_all(const TetMesh& mesh);

struct ConnectResult {
  SingularSet set;
  std::size_t added = 0;
  PlanarArrangement arrangement;  // of set.segments(), free of holes in bounded faces
};

// Repeatedly joins the innermost nested boundary component of a bounded face
// to the face's outer boundary by a shortest path of mesh edges, marking the
// regular edges on it pseudo-singular. Throws NoConnectorFound when no path
// exists.
ConnectResult connect_nested(const TetMesh& mesh, SingularSet set, const Deadline* deadline = nullptr);

}  // namespace reeb
