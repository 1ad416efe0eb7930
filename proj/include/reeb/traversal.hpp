#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "reeb/arrangement.hpp"
#include "reeb/deadline.hpp"
#include "reeb/fiber_graph.hpp"
#include "reeb/jacobi.hpp"
#include "reeb/red_blue.hpp"
#include "reeb/union_find.hpp"

namespace reeb {

// Everything the traversal reads, bundled.
struct TraversalInput {
  const TetMesh& mesh;
  const Classification& classes;
  const PlanarArrangement& arr;           // singular arrangement, hole-free bounded faces
  const std::vector<RangeSegment>& red;   // regular segments
  const std::vector<Crossing>& crossings;
  const std::vector<BoundaryCrossingList>& lists;
};

// One step of a face walk: either a stretch of boundary between crossings
// (a piece) or a red crossing.
struct WalkEvent {
  bool piece = false;
  HalfEdgeId half_edge = kNone;
  std::uint32_t sub = 0;    // piece index along the edge's forward direction
  std::uint32_t entry = 0;  // crossing position in the face's list
};

std::vector<WalkEvent> face_walk(const BoundaryCrossingList& list);

struct CrossInfo {
  FaceId face = kNone;
  EdgeId edge = kNone;
  bool red = false;        // regular segment crossed inside the face
  bool to_upper = false;
  std::size_t components_before = 0;
  std::size_t components_after = 0;
  const CrossEvent* event = nullptr;
};

struct TraversalOptions {
  std::ostream* trace = nullptr;
  std::function<void(const CrossInfo&)> on_cross;
  const Deadline* deadline = nullptr;
};

// Result of looping around one face: labels of the entry graph grouped into
// class components.
struct FaceLoop {
  std::vector<FiberGraph::Label> start_labels;     // labels of the canonical entry graph
  std::vector<std::uint32_t> start_class;          // class index per start label
  std::uint32_t class_count = 0;
  std::vector<std::uint32_t> multiplicity;         // per class
  std::vector<TriId> representative;               // smallest triangle per class at the start
  UnionFind uf;                                    // over every label seen during the loop

  std::uint32_t class_of(FiberGraph::Label l);
};

// Walks the boundary of `face` once counterclockwise from the piece
// (entry_edge, entry_sub), applying every red crossing to `graph`. Calls
// on_piece with the current graph at each piece, entry piece first. Throws
// LoopClosureViolation if the graph after the full circuit differs from the
// entry graph.
FaceLoop loop_face(const TraversalInput& in, FaceId face, FiberGraph& graph, HalfEdgeId entry_edge,
                   std::uint32_t entry_sub, const std::function<void(HalfEdgeId, std::uint32_t, const FiberGraph&)>& on_piece,
                   const TraversalOptions& opts = {});

struct ClassVertex {
  FaceId face = kNone;
  std::uint32_t index = 0;         // class index within the face
  std::uint32_t multiplicity = 1;  // fiber components of the class at any one point of the face
  TriId representative = kNone;
};

struct SingularCorrespondenceGraph {
  std::vector<ClassVertex> vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, unique, first < second
  // Per singular piece crossing that changes topology: the vertices of the
  // components involved on both sides. Their sheets meet along the piece.
  std::vector<std::vector<std::uint32_t>> glue;
  std::size_t component_count() const;
};

struct TraversalStats {
  std::size_t faces_looped = 0;
  std::size_t red_crossings_applied = 0;
  std::size_t blue_crossings_applied = 0;
  std::size_t loop_closures_checked = 0;
  std::size_t peak_retained_graphs = 0;     // wave-front graphs waiting in the queue
  std::size_t peak_retained_triangles = 0;
};

SingularCorrespondenceGraph bfs_traverse(const TraversalInput& in, const TraversalOptions& opts = {},
                                         TraversalStats* stats = nullptr);

}  // namespace reeb
