#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "reeb/deadline.hpp"
#include "reeb/exact.hpp"

namespace reeb {

using ArrVertexId = std::uint32_t;
using HalfEdgeId = std::uint32_t;
using FaceId = std::uint32_t;

struct ArrVertex {
  RationalPoint point;
  Point2 approx;
  VertexId mesh_vertex = kNone;        // set for segment endpoints
  std::vector<HalfEdgeId> outgoing;    // counterclockwise around the vertex
};

// Half-edges come in twin pairs (2k, 2k+1); the even one runs along its
// segment's canonical direction p -> q. The face lies to the left.
struct HalfEdge {
  ArrVertexId origin = kNone;
  HalfEdgeId next = kNone;
  HalfEdgeId prev = kNone;
  FaceId face = kNone;
  std::uint32_t segment = kNone;  // index into PlanarArrangement::segments()
  std::uint32_t piece = 0;        // position of this edge along its segment
};

struct Face {
  HalfEdgeId outer = kNone;          // counterclockwise boundary; none for the unbounded face
  std::vector<HalfEdgeId> holes;     // one half-edge per inner (clockwise) boundary cycle
  bool unbounded = false;
  std::uint32_t depth = 0;           // nesting depth; 0 for the unbounded face
};

// Exact planar subdivision induced by a set of segments, as a doubly
// connected edge list. Face 0 is the unbounded face.
class PlanarArrangement {
 public:
  static constexpr FaceId kUnbounded = 0;

  const std::vector<RangeSegment>& segments() const { return segments_; }
  const std::vector<ArrVertex>& vertices() const { return vertices_; }
  const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
  const std::vector<Face>& faces() const { return faces_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return half_edges_.size() / 2; }
  std::size_t num_faces() const { return faces_.size(); }
  std::size_t num_components() const { return components_; }
  // Vertices that are crossings of segment interiors (k).
  std::size_t intersection_count() const { return intersections_; }

  static HalfEdgeId twin(HalfEdgeId h) { return h ^ 1u; }
  static bool forward(HalfEdgeId h) { return (h & 1u) == 0; }
  ArrVertexId origin(HalfEdgeId h) const { return half_edges_[h].origin; }
  ArrVertexId target(HalfEdgeId h) const { return half_edges_[twin(h)].origin; }
  const RangeSegment& segment_of(HalfEdgeId h) const { return segments_[half_edges_[h].segment]; }
  // Direction of travel of h as a pair of exact points along its segment.
  std::pair<Point2, Point2> direction(HalfEdgeId h) const;

  FaceId face_of_halfedge(HalfEdgeId h) const;
  // Outer boundary cycle of a bounded face, starting at Face::outer.
  std::vector<HalfEdgeId> halfedges_of_face(FaceId f) const;
  const std::vector<HalfEdgeId>& holes_of_face(FaceId f) const;
  std::vector<HalfEdgeId> cycle(HalfEdgeId start) const;

  // Forward half-edges of segment s in order from p to q.
  std::span<const HalfEdgeId> segment_halfedges(std::uint32_t s) const {
    return {seg_edges_.data() + seg_offset_[s], seg_edges_.data() + seg_offset_[s + 1]};
  }
  // Parameters in [0, 1] of the vertices along segment s (one more than edges).
  std::span<const Rational> segment_breaks(std::uint32_t s) const {
    return {seg_breaks_.data() + seg_offset_[s] + s, seg_breaks_.data() + seg_offset_[s + 1] + s + 1};
  }

  ArrVertexId vertex_of_mesh_vertex(VertexId v) const {
    auto it = mesh_vertex_map_.find(v);
    return it == mesh_vertex_map_.end() ? kNone : it->second;
  }

  // Enclosed area of a bounded face (outer area minus holes).
  Rational face_area(FaceId f) const;
  Rational cycle_signed_area(HalfEdgeId start) const;
  std::vector<RationalPoint> face_polygon(FaceId f) const;

  // V - E + F = 1 + C (reduces to V - E + F = 2 when connected).
  bool euler_holds() const {
    return static_cast<long long>(num_vertices()) - static_cast<long long>(num_edges()) +
               static_cast<long long>(num_faces()) ==
           1 + static_cast<long long>(components_);
  }

 private:
  friend PlanarArrangement build_arrangement(std::vector<RangeSegment>, const Deadline*);

  std::vector<RangeSegment> segments_;
  std::vector<ArrVertex> vertices_;
  std::vector<HalfEdge> half_edges_;
  std::vector<Face> faces_;
  std::vector<std::uint32_t> seg_offset_;
  std::vector<HalfEdgeId> seg_edges_;
  std::vector<Rational> seg_breaks_;
  std::unordered_map<VertexId, ArrVertexId> mesh_vertex_map_;
  std::size_t components_ = 0;
  std::size_t intersections_ = 0;
};

// Throws OverlapDegeneracy for collinear overlaps and
// TripleIntersectionDegeneracy for a point interior to three segments.
PlanarArrangement build_arrangement(std::vector<RangeSegment> segments, const Deadline* deadline = nullptr);

// Counterclockwise comparison of directions around a common origin, measured
// from `ref` (which itself sorts first). Directions are (from, to) pairs.
bool ccw_before(std::pair<Point2, Point2> ref, std::pair<Point2, Point2> u, std::pair<Point2, Point2> v);

// Plotting export: vertices, edges as vertex-index pairs, faces as vertex cycles.
nlohmann::ordered_json arrangement_to_json(const PlanarArrangement& arr);

}  // namespace reeb
