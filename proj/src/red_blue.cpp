#include "reeb/red_blue.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "reeb/error.hpp"
#include "reeb/spatial_grid.hpp"

namespace reeb {

namespace {

Box box_of(const RangeSegment& s) {
  return {std::min(s.p.x, s.q.x), std::min(s.p.y, s.q.y), std::max(s.p.x, s.q.x), std::max(s.p.y, s.q.y)};
}

[[noreturn]] void touching(const RangeSegment& red, const RangeSegment& blue) {
  throw DegenerateOrientation("segments of edges " + std::to_string(red.edge) + " and " + std::to_string(blue.edge) +
                              " touch without crossing");
}

}  // namespace

std::vector<Crossing> red_blue(const PlanarArrangement& arr, const std::vector<RangeSegment>& red,
                               const Deadline* deadline) {
  const auto& blue = arr.segments();
  std::vector<Box> boxes(blue.size());
  for (std::size_t i = 0; i < blue.size(); ++i) boxes[i] = box_of(blue[i]);
  UniformGrid grid(boxes);

  std::vector<Crossing> out;
  for (std::uint32_t r = 0; r < red.size(); ++r) {
    if ((r & 0x3ff) == 0) check_deadline(deadline);
    const RangeSegment& rs = red[r];
    std::vector<ArrVertexId> contacts;
    grid.query(box_of(rs), [&](std::uint32_t b) {
      const RangeSegment& bs = blue[b];
      const int o1 = orient2d(bs.p, bs.q, rs.p);
      const int o2 = orient2d(bs.p, bs.q, rs.q);
      if (o1 == 0 && o2 == 0) {
        if (segment_intersection(rs, bs)) touching(rs, bs);
        return;
      }
      if (o1 * o2 > 0) return;
      const int o3 = orient2d(rs.p, rs.q, bs.p);
      const int o4 = orient2d(rs.p, rs.q, bs.q);
      if (o3 * o4 > 0) return;
      VertexId shared = kNone;
      if (rs.a == bs.a || rs.a == bs.b) shared = rs.a;
      if (rs.b == bs.a || rs.b == bs.b) shared = rs.b;
      if (shared != kNone) {
        contacts.push_back(arr.vertex_of_mesh_vertex(shared));
        return;
      }
      if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) touching(rs, bs);
      Crossing c;
      c.red = r;
      c.feature = Crossing::Feature::Edge;
      c.t = crossing_parameter(bs, rs);
      const auto breaks = arr.segment_breaks(b);
      const auto it = std::upper_bound(breaks.begin(), breaks.end(), c.t);
      if (it[-1] == c.t) {
        throw TripleIntersectionDegeneracy("segment of edge " + std::to_string(rs.edge) +
                                           " passes through a vertex of the singular arrangement");
      }
      c.half_edge = arr.segment_halfedges(b)[static_cast<std::size_t>(it - breaks.begin() - 1)];
      c.point = point_at(bs, c.t);
      out.push_back(std::move(c));
    });
    std::sort(contacts.begin(), contacts.end());
    contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());
    for (ArrVertexId v : contacts) {
      Crossing c;
      c.red = r;
      c.feature = Crossing::Feature::Vertex;
      c.vertex = v;
      c.point = arr.vertices()[v].point;
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
    if (x.red != y.red) return x.red < y.red;
    if (x.feature != y.feature) return x.feature < y.feature;
    if (x.half_edge != y.half_edge) return x.half_edge < y.half_edge;
    if (x.vertex != y.vertex) return x.vertex < y.vertex;
    return x.t < y.t;
  });
  return out;
}

std::size_t proper_crossing_count(const std::vector<Crossing>& crossings) {
  return static_cast<std::size_t>(std::count_if(crossings.begin(), crossings.end(), [](const Crossing& c) {
    return c.feature == Crossing::Feature::Edge;
  }));
}

std::vector<BoundaryCrossingList> build_crossing_lists(const PlanarArrangement& arr, const std::vector<RangeSegment>& red,
                                                       const std::vector<Crossing>& crossings) {
  using Dir = std::pair<Point2, Point2>;
  std::unordered_map<HalfEdgeId, std::vector<QEntry>> corner_at, edge_on;

  for (std::uint32_t i = 0; i < crossings.size(); ++i) {
    const Crossing& c = crossings[i];
    const RangeSegment& rs = red[c.red];
    if (c.feature == Crossing::Feature::Edge) {
      for (HalfEdgeId h : {c.half_edge, PlanarArrangement::twin(c.half_edge)}) {
        const Dir d = arr.direction(h);
        const bool up = cross_sign(rs.p, rs.q, d.first, d.second) > 0;
        edge_on[h].push_back(QEntry{i, h, false, up});
      }
      continue;
    }
    // The red segment leaves the vertex into the wedge between consecutive
    // outgoing edges e_k and e_{k+1}; that wedge lies in face(e_k).
    const ArrVertex& v = arr.vertices()[c.vertex];
    const bool from_p = v.mesh_vertex == rs.a;
    const Dir d = from_p ? Dir{rs.p, rs.q} : Dir{rs.q, rs.p};
    const Dir ref = arr.direction(v.outgoing.front());
    std::size_t k = 0;
    for (std::size_t j = 1; j < v.outgoing.size(); ++j)
      if (ccw_before(ref, arr.direction(v.outgoing[j]), d)) k = j;
    const HalfEdgeId h = v.outgoing[k];
    corner_at[h].push_back(QEntry{i, h, true, !from_p});
  }

  auto red_dir = [&](const QEntry& e) {
    const Crossing& c = crossings[e.crossing];
    const RangeSegment& rs = red[c.red];
    return arr.vertices()[c.vertex].mesh_vertex == rs.a ? Dir{rs.p, rs.q} : Dir{rs.q, rs.p};
  };
  for (auto& [h, list] : corner_at) {
    const Dir ref = arr.direction(h);
    // Clockwise from the next edge: descending angle from h.
    std::sort(list.begin(), list.end(),
              [&](const QEntry& x, const QEntry& y) { return ccw_before(ref, red_dir(y), red_dir(x)); });
  }
  for (auto& [h, list] : edge_on) {
    const bool fwd = PlanarArrangement::forward(h);
    std::sort(list.begin(), list.end(), [&](const QEntry& x, const QEntry& y) {
      const Rational& tx = crossings[x.crossing].t;
      const Rational& ty = crossings[y.crossing].t;
      return fwd ? tx < ty : ty < tx;
    });
  }

  std::vector<BoundaryCrossingList> lists(arr.num_faces());
  for (FaceId f = 0; f < arr.num_faces(); ++f) {
    auto& L = lists[f];
    L.face = f;
    std::vector<HalfEdgeId> starts;
    if (!arr.faces()[f].unbounded) starts.push_back(arr.faces()[f].outer);
    for (HalfEdgeId h : arr.faces()[f].holes) starts.push_back(h);
    for (HalfEdgeId s : starts) {
      auto cyc = arr.cycle(s);
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      for (HalfEdgeId h : cyc) {
        L.boundary.push_back(h);
        if (auto it = corner_at.find(h); it != corner_at.end())
          L.entries.insert(L.entries.end(), it->second.begin(), it->second.end());
        if (auto it = edge_on.find(h); it != edge_on.end())
          L.entries.insert(L.entries.end(), it->second.begin(), it->second.end());
      }
    }
  }
  return lists;
}

std::vector<EssentialFaceDescriptor> essential_descriptors(const BoundaryCrossingList& list) {
  std::vector<EssentialFaceDescriptor> out;
  const auto n = static_cast<std::uint32_t>(list.entries.size());
  if (n == 0) {
    out.push_back({list.face, kNone, kNone});
    return out;
  }
  for (std::uint32_t i = 0; i < n; ++i) out.push_back({list.face, i, (i + 1) % n});
  return out;
}

}  // namespace reeb
