#include "reeb/jacobi.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "reeb/error.hpp"
#include "reeb/union_find.hpp"

namespace reeb {

const char* to_string(EdgeType t) {
  switch (t) {
    case EdgeType::Regular: return "regular";
    case EdgeType::Definite: return "definite";
    case EdgeType::Indefinite: return "indefinite";
  }
  return "?";
}

namespace {

int link_side(const TetMesh& mesh, EdgeId e, VertexId v) {
  const auto& ed = mesh.edges()[e];
  const int o = orient2d(mesh.image(ed[0]), mesh.image(ed[1]), mesh.image(v));
  if (o == 0) {
    throw DegenerateOrientation("image of vertex " + std::to_string(v) + " is collinear with edge (" +
                                std::to_string(ed[0]) + "," + std::to_string(ed[1]) + ")");
  }
  return o;
}

std::uint32_t count_components(const std::vector<VertexId>& verts, const std::vector<std::array<VertexId, 2>>& edges) {
  if (verts.empty()) return 0;
  UnionFind uf(verts.size());
  auto local = [&](VertexId v) {
    return static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::uint32_t n = static_cast<std::uint32_t>(verts.size());
  for (const auto& [u, v] : edges)
    if (uf.unite(local(u), local(v))) --n;
  return n;
}

}  // namespace

LinkPartition split_link(const TetMesh& mesh, EdgeId edge) {
  const EdgeLink link = edge_link(mesh, edge);
  LinkPartition part;
  part.edge = edge;
  std::unordered_map<VertexId, int> side;
  for (VertexId v : link.vertices) {
    const int s = link_side(mesh, edge, v);
    side[v] = s;
    (s > 0 ? part.upper : part.lower).push_back(v);
  }
  for (const auto& uv : link.edges) {
    const int su = side.at(uv[0]), sv = side.at(uv[1]);
    if (su != sv) continue;
    (su > 0 ? part.upper_edges : part.lower_edges).push_back(uv);
  }
  part.upper_components = count_components(part.upper, part.upper_edges);
  part.lower_components = count_components(part.lower, part.lower_edges);
  return part;
}

EdgeClass classify(const LinkPartition& link) {
  EdgeClass c;
  c.edge = link.edge;
  c.upper_components = link.upper_components;
  c.lower_components = link.lower_components;
  if (c.upper_components == 1 && c.lower_components == 1) {
    c.type = EdgeType::Regular;
  } else if (c.upper_components == 0 || c.lower_components == 0) {
    c.type = EdgeType::Definite;
  } else {
    c.type = EdgeType::Indefinite;
  }
  return c;
}

bool SingularSet::contains(EdgeId e) const {
  return std::binary_search(singular_edges.begin(), singular_edges.end(), e) ||
         std::binary_search(pseudo_edges.begin(), pseudo_edges.end(), e);
}

std::vector<RangeSegment> SingularSet::segments(const TetMesh& mesh) const {
  std::vector<RangeSegment> out;
  out.reserve(singular_edges.size() + pseudo_edges.size());
  for (EdgeId e : singular_edges) out.push_back(make_segment(mesh, e, SegmentKind::Singular));
  for (EdgeId e : pseudo_edges) out.push_back(make_segment(mesh, e, SegmentKind::PseudoSingular));
  return out;
}

LinkTable LinkTable::build(const TetMesh& mesh) {
  LinkTable t;
  const auto ne = static_cast<EdgeId>(mesh.num_edges());
  t.offset_.resize(ne + 1, 0);
  t.split_.resize(ne);
  t.tri_.reserve(3 * mesh.num_triangles());
  for (EdgeId e = 0; e < ne; ++e) {
    const auto tris = mesh.edge_triangles(e);
    for (TriId tri : tris)
      if (link_side(mesh, e, mesh.opposite_vertex(tri, e)) > 0) t.tri_.push_back(tri);
    t.split_[e] = static_cast<std::uint32_t>(t.tri_.size());
    for (TriId tri : tris)
      if (link_side(mesh, e, mesh.opposite_vertex(tri, e)) < 0) t.tri_.push_back(tri);
    t.offset_[e + 1] = static_cast<std::uint32_t>(t.tri_.size());
  }
  return t;
}

Classification classify_all(const TetMesh& mesh) {
  Classification out;
  const auto ne = static_cast<EdgeId>(mesh.num_edges());
  out.classes.resize(ne);
  std::vector<VertexId> verts;
  for (EdgeId e = 0; e < ne; ++e) {
    out.classes[e] = classify(split_link(mesh, e));
    if (out.classes[e].singular()) {
      out.singular.singular_edges.push_back(e);
      verts.push_back(mesh.edges()[e][0]);
      verts.push_back(mesh.edges()[e][1]);
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  out.singular.singular_vertices = std::move(verts);
  out.links = LinkTable::build(mesh);
  return out;
}

namespace {

// Mesh vertices whose images are vertices of the cycle; falls back to the
// endpoints of the cycle's segments when the cycle has no vertex point.
std::vector<VertexId> cycle_mesh_vertices(const PlanarArrangement& arr, HalfEdgeId start) {
  std::vector<VertexId> out;
  const auto cyc = arr.cycle(start);
  for (HalfEdgeId h : cyc) {
    const VertexId mv = arr.vertices()[arr.origin(h)].mesh_vertex;
    if (mv != kNone) out.push_back(mv);
  }
  if (out.empty()) {
    for (HalfEdgeId h : cyc) {
      out.push_back(arr.segment_of(h).a);
      out.push_back(arr.segment_of(h).b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Shortest path in the 1-skeleton (hop count) from any source to any target,
// returned as mesh edges.
std::vector<EdgeId> shortest_path(const TetMesh& mesh, const std::vector<VertexId>& sources,
                                  const std::vector<VertexId>& targets) {
  const auto nv = mesh.num_vertices();
  std::vector<EdgeId> via(nv, kNone);
  std::vector<std::uint8_t> seen(nv, 0), is_target(nv, 0);
  for (VertexId t : targets) is_target[t] = 1;
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    seen[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    if (is_target[u]) {
      std::vector<EdgeId> path;
      for (VertexId x = u; via[x] != kNone; x = mesh.other_endpoint(via[x], x)) path.push_back(via[x]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (EdgeId e : mesh.vertex_edges(u)) {
      const VertexId w = mesh.other_endpoint(e, u);
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = e;
      queue.push_back(w);
    }
  }
  return {};
}

}  // namespace

ConnectResult connect_nested(const TetMesh& mesh, SingularSet set, const Deadline* deadline) {
  ConnectResult res;
  for (;;) {
    check_deadline(deadline);
    PlanarArrangement arr = build_arrangement(set.segments(mesh), deadline);
    FaceId nested = kNone;
    for (FaceId f = 1; f < arr.num_faces(); ++f) {
      if (arr.faces()[f].holes.empty()) continue;
      if (nested == kNone || arr.faces()[f].depth > arr.faces()[nested].depth) nested = f;
    }
    if (nested == kNone) {
      res.arrangement = std::move(arr);
      break;
    }
    const auto sources = cycle_mesh_vertices(arr, arr.faces()[nested].outer);
    const auto targets = cycle_mesh_vertices(arr, arr.faces()[nested].holes.front());
    const auto path = shortest_path(mesh, sources, targets);
    if (path.empty()) {
      throw NoConnectorFound("no mesh path joins a nested boundary component of face " + std::to_string(nested) +
                             " to its outer boundary");
    }
    for (EdgeId e : path) {
      if (set.contains(e)) continue;
      set.pseudo_edges.insert(std::lower_bound(set.pseudo_edges.begin(), set.pseudo_edges.end(), e), e);
      ++res.added;
    }
  }
  res.set = std::move(set);
  return res;
}

}  // namespace reeb
