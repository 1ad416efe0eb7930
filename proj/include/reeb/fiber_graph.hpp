#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "reeb/jacobi.hpp"
#include "reeb/mesh.hpp"

namespace reeb {

// Active triangles of a fiber, labelled by connected component. Two active
// triangles are adjacent when they are faces of a common tetrahedron.
class FiberGraph {
 public:
  using Label = std::uint32_t;

  struct Component {
    TriId min_triangle = kNone;
    std::uint32_t size = 0;
  };

  bool contains(TriId t) const { return label_.count(t) != 0; }
  Label label_of(TriId t) const { return label_.at(t); }
  std::size_t size() const { return label_.size(); }
  bool empty() const { return label_.empty(); }
  std::size_t component_count() const { return comps_.size(); }
  const std::unordered_map<Label, Component>& components() const { return comps_; }

  std::vector<Label> labels() const;  // sorted
  std::vector<TriId> triangles() const;  // sorted
  std::vector<TriId> component_triangles(Label l) const;  // sorted

  // Renumbers components 0..c-1 in order of their smallest triangle.
  void canonicalize();

  // Same triangle set and same partition into components.
  bool equivalent(const FiberGraph& other) const;

 private:
  friend struct CrossEvent cross_segment(FiberGraph& g, const TetMesh& mesh, std::span<const TriId> remove,
                                         std::span<const TriId> add);

  std::unordered_map<TriId, Label> label_;
  std::unordered_map<Label, Component> comps_;
  Label next_ = 0;
};

struct CrossEvent {
  std::vector<FiberGraph::Label> before;  // components that lost triangles, old labels
  std::vector<FiberGraph::Label> after;   // components holding added triangles or remains of `before`, fresh labels

  long delta() const { return static_cast<long>(after.size()) - static_cast<long>(before.size()); }
};

// Removes `remove`, adds `add`, and relabels every component touched by the
// change. Untouched components keep their labels. Throws InconsistentState
// when a triangle to remove is missing or one to add is already present.
CrossEvent cross_segment(FiberGraph& g, const TetMesh& mesh, std::span<const TriId> remove, std::span<const TriId> add);

// Crossing the image of edge e from its lower to its upper side, or back.
inline CrossEvent cross_segment(FiberGraph& g, const TetMesh& mesh, const LinkTable& links, EdgeId e, bool to_upper) {
  return to_upper ? cross_segment(g, mesh, links.lower(e), links.upper(e))
                  : cross_segment(g, mesh, links.upper(e), links.lower(e));
}

}  // namespace reeb
