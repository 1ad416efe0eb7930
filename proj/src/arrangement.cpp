#include "reeb/arrangement.hpp"

#include <algorithm>
#include <numeric>

#include "reeb/error.hpp"
#include "reeb/spatial_grid.hpp"
#include "reeb/union_find.hpp"

namespace reeb {

namespace {

using Dir = std::pair<Point2, Point2>;

int angle_class(const Dir& ref, const Dir& u) {
  const int c = cross_sign(ref.first, ref.second, u.first, u.second);
  if (c > 0) return 1;
  if (c < 0) return 3;
  return dot_sign(ref.first, ref.second, u.first, u.second) > 0 ? 0 : 2;
}

// Global counterclockwise order starting at the +x axis.
bool angle_less(const Dir& u, const Dir& v) {
  auto half = [](const Dir& d) {
    const double dx = d.second.x - d.first.x, dy = d.second.y - d.first.y;
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  const int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return cross_sign(u.first, u.second, v.first, v.second) > 0;
}

Box segment_box(const RangeSegment& s) {
  return {std::min(s.p.x, s.q.x), std::min(s.p.y, s.q.y), std::max(s.p.x, s.q.x), std::max(s.p.y, s.q.y)};
}

// Parameter along s of a point known to lie on s.
Rational parameter_of(const RangeSegment& s, const RationalPoint& pt) {
  if (s.p.x != s.q.x) return (pt.x - s.p.x) / (Rational(s.q.x) - s.p.x);
  return (pt.y - s.p.y) / (Rational(s.q.y) - s.p.y);
}

// Winding number of a counterclockwise cycle around pt (pt not on the cycle).
int winding(const std::vector<RationalPoint>& poly, const RationalPoint& pt) {
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    if (a.y <= pt.y) {
      if (b.y > pt.y && orient2d(a, b, pt) > 0) ++wn;
    } else if (b.y <= pt.y && orient2d(a, b, pt) < 0) {
      --wn;
    }
  }
  return wn;
}

}  // namespace

bool ccw_before(Dir ref, Dir u, Dir v) {
  const int cu = angle_class(ref, u), cv = angle_class(ref, v);
  if (cu != cv) return cu < cv;
  if (cu == 1 || cu == 3) return cross_sign(u.first, u.second, v.first, v.second) > 0;
  return false;
}

std::pair<Point2, Point2> PlanarArrangement::direction(HalfEdgeId h) const {
  const auto& s = segment_of(h);
  return forward(h) ? Dir{s.p, s.q} : Dir{s.q, s.p};
}

FaceId PlanarArrangement::face_of_halfedge(HalfEdgeId h) const {
  if (h >= half_edges_.size()) throw InvalidHandle("unknown half-edge " + std::to_string(h));
  return half_edges_[h].face;
}

std::vector<HalfEdgeId> PlanarArrangement::cycle(HalfEdgeId start) const {
  if (start >= half_edges_.size()) throw InvalidHandle("unknown half-edge " + std::to_string(start));
  std::vector<HalfEdgeId> out;
  HalfEdgeId h = start;
  do {
    out.push_back(h);
    h = half_edges_[h].next;
  } while (h != start);
  return out;
}

std::vector<HalfEdgeId> PlanarArrangement::halfedges_of_face(FaceId f) const {
  if (f >= faces_.size()) throw InvalidHandle("unknown face " + std::to_string(f));
  if (faces_[f].outer == kNone) return {};
  return cycle(faces_[f].outer);
}

const std::vector<HalfEdgeId>& PlanarArrangement::holes_of_face(FaceId f) const {
  if (f >= faces_.size()) throw InvalidHandle("unknown face " + std::to_string(f));
  return faces_[f].holes;
}

Rational PlanarArrangement::cycle_signed_area(HalfEdgeId start) const {
  Rational twice = 0;
  HalfEdgeId h = start;
  do {
    const auto& a = vertices_[origin(h)].point;
    const auto& b = vertices_[target(h)].point;
    twice += a.x * b.y - b.x * a.y;
    h = half_edges_[h].next;
  } while (h != start);
  return twice / 2;
}

Rational PlanarArrangement::face_area(FaceId f) const {
  if (f >= faces_.size()) throw InvalidHandle("unknown face " + std::to_string(f));
  if (faces_[f].unbounded) return 0;
  Rational a = cycle_signed_area(faces_[f].outer);
  for (HalfEdgeId h : faces_[f].holes) a += cycle_signed_area(h);
  return a;
}

std::vector<RationalPoint> PlanarArrangement::face_polygon(FaceId f) const {
  std::vector<RationalPoint> poly;
  for (HalfEdgeId h : halfedges_of_face(f)) poly.push_back(vertices_[origin(h)].point);
  return poly;
}

PlanarArrangement build_arrangement(std::vector<RangeSegment> segments, const Deadline* deadline) {
  PlanarArrangement arr;
  arr.segments_ = std::move(segments);
  const auto& segs = arr.segments_;
  const auto ns = static_cast<std::uint32_t>(segs.size());

  std::unordered_map<RationalPoint, ArrVertexId, RationalPointHash> index;
  std::vector<std::vector<std::uint32_t>> interior_of;  // segments through each vertex interior
  auto vertex_at = [&](const RationalPoint& pt) {
    auto [it, inserted] = index.emplace(pt, static_cast<ArrVertexId>(arr.vertices_.size()));
    if (inserted) {
      ArrVertex v;
      v.point = pt;
      v.approx = pt.approx();
      arr.vertices_.push_back(std::move(v));
      interior_of.emplace_back();
    }
    return it->second;
  };

  // Points on each segment as (parameter, vertex).
  std::vector<std::vector<std::pair<Rational, ArrVertexId>>> on_segment(ns);
  for (std::uint32_t s = 0; s < ns; ++s) {
    if (segs[s].p == segs[s].q) throw CoincidentVertexDegeneracy("segment of edge " + std::to_string(segs[s].edge) + " has zero length");
    for (int end = 0; end < 2; ++end) {
      const ArrVertexId v = vertex_at(RationalPoint(end ? segs[s].q : segs[s].p));
      const VertexId mv = end ? segs[s].b : segs[s].a;
      if (mv != kNone) {
        auto& slot = arr.vertices_[v].mesh_vertex;
        if (slot != kNone && slot != mv) {
          throw CoincidentVertexDegeneracy("vertices " + std::to_string(slot) + " and " + std::to_string(mv) +
                                           " have the same image");
        }
        slot = mv;
        arr.mesh_vertex_map_[mv] = v;
      }
      on_segment[s].emplace_back(Rational(end), v);
    }
  }
  const std::size_t endpoint_vertices = arr.vertices_.size();

  std::vector<Box> boxes(ns);
  for (std::uint32_t s = 0; s < ns; ++s) boxes[s] = segment_box(segs[s]);
  UniformGrid grid(boxes);
  std::size_t visited = 0;
  grid.self_pairs([&](std::uint32_t i, std::uint32_t j) {
    if ((++visited & 0xfff) == 0) check_deadline(deadline);
    const RangeSegment& s1 = segs[i];
    const RangeSegment& s2 = segs[j];
    const int o1 = orient2d(s1.p, s1.q, s2.p);
    const int o2 = orient2d(s1.p, s1.q, s2.q);
    if (o1 == 0 && o2 == 0) {
      // Collinear; segment_intersection throws on overlap, and a single
      // touching point is a shared endpoint, already a vertex.
      segment_intersection(s1, s2);
      return;
    }
    if (o1 * o2 > 0) return;
    const int o3 = orient2d(s2.p, s2.q, s1.p);
    const int o4 = orient2d(s2.p, s2.q, s1.q);
    if (o3 * o4 > 0) return;
    const bool shared = s1.p == s2.p || s1.p == s2.q || s1.q == s2.p || s1.q == s2.q;
    if (shared) return;
    if (o1 == 0 || o2 == 0) {  // endpoint of s2 on the interior of s1
      const RationalPoint pt(o1 == 0 ? s2.p : s2.q);
      const ArrVertexId v = vertex_at(pt);
      on_segment[i].emplace_back(parameter_of(s1, pt), v);
      interior_of[v].push_back(i);
      return;
    }
    if (o3 == 0 || o4 == 0) {
      const RationalPoint pt(o3 == 0 ? s1.p : s1.q);
      const ArrVertexId v = vertex_at(pt);
      on_segment[j].emplace_back(parameter_of(s2, pt), v);
      interior_of[v].push_back(j);
      return;
    }
    Rational t1 = crossing_parameter(s1, s2);
    Rational t2 = crossing_parameter(s2, s1);
    const ArrVertexId v = vertex_at(point_at(s1, t1));
    on_segment[i].emplace_back(std::move(t1), v);
    on_segment[j].emplace_back(std::move(t2), v);
    interior_of[v].push_back(i);
    interior_of[v].push_back(j);
  });

  for (ArrVertexId v = 0; v < arr.vertices_.size(); ++v) {
    auto& list = interior_of[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (list.size() >= 3) {
      throw TripleIntersectionDegeneracy("segments of edges " + std::to_string(segs[list[0]].edge) + ", " +
                                         std::to_string(segs[list[1]].edge) + ", " +
                                         std::to_string(segs[list[2]].edge) + " meet in one interior point");
    }
    if (v >= endpoint_vertices && list.size() >= 2) arr.intersections_++;
  }

  // Split segments into edges.
  arr.seg_offset_.assign(ns + 1, 0);
  for (std::uint32_t s = 0; s < ns; ++s) {
    auto& pts = on_segment[s];
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    pts.erase(std::unique(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.second == b.second; }),
              pts.end());
    arr.seg_offset_[s + 1] = arr.seg_offset_[s] + static_cast<std::uint32_t>(pts.size() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      arr.seg_breaks_.push_back(pts[k].first);
      if (k + 1 == pts.size()) break;
      const auto h = static_cast<HalfEdgeId>(arr.half_edges_.size());
      HalfEdge fwd, bwd;
      fwd.origin = pts[k].second;
      bwd.origin = pts[k + 1].second;
      fwd.segment = bwd.segment = s;
      fwd.piece = bwd.piece = static_cast<std::uint32_t>(k);
      arr.half_edges_.push_back(fwd);
      arr.half_edges_.push_back(bwd);
      arr.seg_edges_.push_back(h);
      arr.vertices_[fwd.origin].outgoing.push_back(h);
      arr.vertices_[bwd.origin].outgoing.push_back(h + 1);
    }
    std::vector<std::pair<Rational, ArrVertexId>>().swap(pts);
  }
  check_deadline(deadline);

  // Rotation system: next(twin(o_i)) is the clockwise neighbour o_{i-1}.
  for (auto& v : arr.vertices_) {
    std::sort(v.outgoing.begin(), v.outgoing.end(),
              [&](HalfEdgeId a, HalfEdgeId b) { return angle_less(arr.direction(a), arr.direction(b)); });
    const std::size_t k = v.outgoing.size();
    for (std::size_t i = 0; i < k; ++i) {
      const HalfEdgeId in = PlanarArrangement::twin(v.outgoing[i]);
      const HalfEdgeId out = v.outgoing[(i + k - 1) % k];
      arr.half_edges_[in].next = out;
      arr.half_edges_[out].prev = in;
    }
  }

  // Connected components of the segment graph.
  UnionFind uf(arr.vertices_.size());
  for (HalfEdgeId h = 0; h < arr.half_edges_.size(); h += 2) uf.unite(arr.origin(h), arr.target(h));
  std::vector<ArrVertexId> leftmost(arr.vertices_.size(), kNone);
  for (ArrVertexId v = 0; v < arr.vertices_.size(); ++v) {
    auto& slot = leftmost[uf.find(v)];
    if (slot == kNone || arr.vertices_[v].point < arr.vertices_[slot].point) slot = v;
  }
  std::vector<ArrVertexId> components;
  for (ArrVertexId v = 0; v < arr.vertices_.size(); ++v)
    if (uf.find(v) == v) components.push_back(v);
  arr.components_ = components.size();

  // The outer boundary of a component passes through the wedge at its
  // leftmost vertex that faces -x: it starts with the last outgoing edge of
  // the upper half-plane.
  std::vector<std::uint8_t> is_outer_start(arr.half_edges_.size(), 0);
  for (ArrVertexId root : components) {
    const auto& out = arr.vertices_[leftmost[root]].outgoing;
    std::size_t j = out.size() - 1;  // no upward edge: the wedge wraps past the last one
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto d = arr.direction(out[i]);
      const double dx = d.second.x - d.first.x, dy = d.second.y - d.first.y;
      if (dy > 0 || (dy == 0 && dx > 0)) j = i;
    }
    is_outer_start[out[j]] = 1;
  }

  // Trace cycles; bounded cycles become faces.
  arr.faces_.push_back(Face{kNone, {}, true, 0});
  std::vector<std::uint32_t> cycle_of(arr.half_edges_.size(), kNone);
  std::vector<HalfEdgeId> outer_cycles;  // one per component
  std::vector<ArrVertexId> outer_component;
  std::uint32_t ncycles = 0;
  for (HalfEdgeId start = 0; start < arr.half_edges_.size(); ++start) {
    if (cycle_of[start] != kNone) continue;
    bool outer = false;
    HalfEdgeId h = start;
    do {
      cycle_of[h] = ncycles;
      outer |= is_outer_start[h] != 0;
      h = arr.half_edges_[h].next;
    } while (h != start);
    ++ncycles;
    if (outer) {
      outer_cycles.push_back(start);
      outer_component.push_back(uf.find(arr.origin(start)));
      continue;
    }
    const auto f = static_cast<FaceId>(arr.faces_.size());
    arr.faces_.push_back(Face{start, {}, false, 0});
    h = start;
    do {
      arr.half_edges_[h].face = f;
      h = arr.half_edges_[h].next;
    } while (h != start);
  }

  // Place each component's outer boundary as a hole of the innermost bounded
  // face (of another component) containing it.
  std::vector<FaceId> hole_face(outer_cycles.size(), PlanarArrangement::kUnbounded);
  if (outer_cycles.size() > 1) {
    std::vector<std::vector<RationalPoint>> polys(arr.faces_.size());
    std::vector<Box> fboxes(arr.faces_.size());
    std::vector<std::optional<Rational>> areas(arr.faces_.size());
    std::vector<ArrVertexId> face_component(arr.faces_.size(), kNone);
    for (FaceId f = 1; f < arr.faces_.size(); ++f) {
      polys[f] = arr.face_polygon(f);
      Box b{polys[f][0].approx().x, polys[f][0].approx().y, polys[f][0].approx().x, polys[f][0].approx().y};
      for (const auto& p : polys[f]) {
        const Point2 a = p.approx();
        b = {std::min(b.x0, a.x), std::min(b.y0, a.y), std::max(b.x1, a.x), std::max(b.y1, a.y)};
      }
      const double pad = 1e-9 * (1 + std::abs(b.x0) + std::abs(b.x1) + std::abs(b.y0) + std::abs(b.y1));
      fboxes[f] = {b.x0 - pad, b.y0 - pad, b.x1 + pad, b.y1 + pad};
      face_component[f] = uf.find(arr.origin(arr.faces_[f].outer));
    }
    for (std::size_t c = 0; c < outer_cycles.size(); ++c) {
      check_deadline(deadline);
      const RationalPoint& probe = arr.vertices_[leftmost[outer_component[c]]].point;
      const Point2 pa = probe.approx();
      FaceId best = PlanarArrangement::kUnbounded;
      for (FaceId f = 1; f < arr.faces_.size(); ++f) {
        if (face_component[f] == outer_component[c]) continue;
        const Box& b = fboxes[f];
        if (pa.x < b.x0 || pa.x > b.x1 || pa.y < b.y0 || pa.y > b.y1) continue;
        if (winding(polys[f], probe) == 0) continue;
        if (!areas[f]) areas[f] = arr.cycle_signed_area(arr.faces_[f].outer);
        if (best != PlanarArrangement::kUnbounded) {
          if (!areas[best]) areas[best] = arr.cycle_signed_area(arr.faces_[best].outer);
          if (!(*areas[f] < *areas[best])) continue;
        }
        best = f;
      }
      hole_face[c] = best;
    }
  }
  for (std::size_t c = 0; c < outer_cycles.size(); ++c) {
    const FaceId f = hole_face[c];
    arr.faces_[f].holes.push_back(outer_cycles[c]);
    HalfEdgeId h = outer_cycles[c];
    do {
      arr.half_edges_[h].face = f;
      h = arr.half_edges_[h].next;
    } while (h != outer_cycles[c]);
  }

  // Depth: a bounded face sits one level below the face holding its
  // component's outer boundary.
  std::unordered_map<ArrVertexId, FaceId> component_parent;
  for (std::size_t c = 0; c < outer_cycles.size(); ++c) component_parent[outer_component[c]] = hole_face[c];
  std::vector<std::int64_t> depth(arr.faces_.size(), -1);
  depth[0] = 0;
  for (FaceId f = 1; f < arr.faces_.size(); ++f) {
    std::vector<FaceId> chain;
    FaceId g = f;
    while (depth[g] < 0) {
      chain.push_back(g);
      g = component_parent.at(uf.find(arr.origin(arr.faces_[g].outer)));
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      depth[*it] = depth[g] + 1;
      g = *it;
    }
  }
  for (FaceId f = 0; f < arr.faces_.size(); ++f) arr.faces_[f].depth = static_cast<std::uint32_t>(depth[f]);

  if (!arr.euler_holds()) {
    throw InconsistentState("arrangement violates Euler's formula: V=" + std::to_string(arr.num_vertices()) +
                            " E=" + std::to_string(arr.num_edges()) + " F=" + std::to_string(arr.num_faces()) +
                            " C=" + std::to_string(arr.num_components()));
  }
  return arr;
}

nlohmann::ordered_json arrangement_to_json(const PlanarArrangement& arr) {
  nlohmann::ordered_json j;
  auto& vs = j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : arr.vertices()) vs.push_back({to_string(v.point.x), to_string(v.point.y)});
  auto& es = j["edges"] = nlohmann::ordered_json::array();
  for (HalfEdgeId h = 0; h < arr.half_edges().size(); h += 2) {
    es.push_back({{"vertices", {arr.origin(h), arr.target(h)}},
                  {"edge", arr.segment_of(h).edge},
                  {"kind", to_string(arr.segment_of(h).kind)}});
  }
  auto& fs = j["faces"] = nlohmann::ordered_json::array();
  for (FaceId f = 0; f < arr.num_faces(); ++f) {
    nlohmann::ordered_json face;
    face["id"] = f;
    face["unbounded"] = arr.faces()[f].unbounded;
    auto& cyc = face["outer"] = nlohmann::ordered_json::array();
    for (HalfEdgeId h : arr.halfedges_of_face(f)) cyc.push_back(arr.origin(h));
    auto& holes = face["holes"] = nlohmann::ordered_json::array();
    for (HalfEdgeId start : arr.holes_of_face(f)) {
      auto hole = nlohmann::ordered_json::array();
      for (HalfEdgeId h : arr.cycle(start)) hole.push_back(arr.origin(h));
      holes.push_back(hole);
    }
    fs.push_back(face);
  }
  return j;
}

}  // namespace reeb
