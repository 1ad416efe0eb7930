#include "reeb/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "reeb/arrangement.hpp"
#include "reeb/error.hpp"
#include "reeb/union_find.hpp"

namespace reeb {

namespace {

// Per-edge incident triangles on each side, and whether the edge changes
// fiber topology (some side is empty or splits into several pieces).
struct EdgeSides {
  std::vector<std::vector<TriId>> upper, lower;
  std::vector<std::uint8_t> critical;
};

std::size_t pieces(const TetMesh& mesh, EdgeId e, const std::vector<TriId>& tris) {
  // Triangles {e, v} on one side are linked through tetrahedra {e, v, w}.
  std::size_t n = tris.size();
  UnionFind uf(tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i)
    for (std::size_t j = i + 1; j < tris.size(); ++j) {
      bool share = false;
      for (TetId t : mesh.triangle_tets(tris[i]))
        for (TetId u : mesh.triangle_tets(tris[j])) share |= t == u;
      if (share && uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))) --n;
    }
  (void)e;
  return n;
}

EdgeSides edge_sides(const TetMesh& mesh) {
  EdgeSides s;
  const auto ne = mesh.num_edges();
  s.upper.resize(ne);
  s.lower.resize(ne);
  s.critical.resize(ne);
  for (EdgeId e = 0; e < ne; ++e) {
    const auto& ed = mesh.edges()[e];
    for (TriId t : mesh.edge_triangles(e)) {
      const auto& tri = mesh.triangles()[t];
      VertexId v = tri[0] + tri[1] + tri[2] - ed[0] - ed[1];
      const int o = orient2d(mesh.image(ed[0]), mesh.image(ed[1]), mesh.image(v));
      if (o == 0) throw DegenerateOrientation("vertex " + std::to_string(v) + " collinear with edge " + std::to_string(e));
      (o > 0 ? s.upper : s.lower)[e].push_back(t);
    }
    std::sort(s.upper[e].begin(), s.upper[e].end());
    std::sort(s.lower[e].begin(), s.lower[e].end());
    s.critical[e] = !(pieces(mesh, e, s.upper[e]) == 1 && pieces(mesh, e, s.lower[e]) == 1);
  }
  return s;
}

// Active triangles of one face with component ids assigned by a fresh search.
struct FaceFibers {
  std::vector<TriId> active;        // sorted
  std::vector<std::uint32_t> comp;  // parallel to active
  std::vector<TriId> comp_min;      // smallest triangle per component
};

FaceFibers label(const TetMesh& mesh, std::vector<TriId> active) {
  FaceFibers ff;
  std::sort(active.begin(), active.end());
  ff.active = std::move(active);
  ff.comp.assign(ff.active.size(), kNone);
  auto index = [&](TriId t) -> std::size_t {
    auto it = std::lower_bound(ff.active.begin(), ff.active.end(), t);
    return (it != ff.active.end() && *it == t) ? static_cast<std::size_t>(it - ff.active.begin()) : kNone;
  };
  for (std::size_t s = 0; s < ff.active.size(); ++s) {
    if (ff.comp[s] != kNone) continue;
    const auto c = static_cast<std::uint32_t>(ff.comp_min.size());
    ff.comp_min.push_back(ff.active[s]);
    std::vector<std::size_t> stack{s};
    ff.comp[s] = c;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (TetId tet : mesh.triangle_tets(ff.active[i]))
        for (TriId u : mesh.tet_triangles(tet)) {
          const std::size_t j = index(u);
          if (j == kNone || ff.comp[j] != kNone) continue;
          ff.comp[j] = c;
          stack.push_back(j);
        }
    }
  }
  return ff;
}

std::vector<TriId> step(const std::vector<TriId>& active, const std::vector<TriId>& out, const std::vector<TriId>& in) {
  std::vector<TriId> kept;
  std::set_difference(active.begin(), active.end(), out.begin(), out.end(), std::back_inserter(kept));
  if (kept.size() + out.size() != active.size()) throw InconsistentState("oracle: leaving triangles were not active");
  std::vector<TriId> next;
  std::set_union(kept.begin(), kept.end(), in.begin(), in.end(), std::back_inserter(next));
  if (next.size() != kept.size() + in.size()) throw InconsistentState("oracle: entering triangles already active");
  return next;
}

struct SideRecord {
  std::vector<std::pair<TriId, std::uint32_t>> untouched;  // (smallest triangle, H vertex)
  std::vector<std::uint32_t> affected;
};

}  // namespace

ReebSpaceResult full_arrange_and_traverse(const TetMesh& mesh, const OracleOptions& opts) {
  ReebSpaceResult res;
  res.algorithm = "full";
  const EdgeSides sides = edge_sides(mesh);

  std::vector<RangeSegment> segs;
  for (EdgeId e = 0; e < mesh.num_edges(); ++e)
    segs.push_back(make_segment(mesh, e, sides.critical[e] ? SegmentKind::Singular : SegmentKind::Regular));
  const PlanarArrangement A = build_arrangement(std::move(segs), opts.deadline);

  // H vertices: (face, component), numbered as faces are reached.
  std::vector<std::pair<FaceId, TriId>> hv;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hedges;
  std::vector<std::vector<std::uint32_t>> glue;
  std::unordered_map<HalfEdgeId, SideRecord> pending;  // keyed by forward half-edge

  std::vector<std::uint8_t> reached(A.num_faces(), 0);
  std::deque<std::pair<FaceId, std::vector<TriId>>> queue;
  reached[PlanarArrangement::kUnbounded] = 1;
  queue.emplace_back(PlanarArrangement::kUnbounded, std::vector<TriId>{});
  std::size_t visited = 0;

  while (!queue.empty()) {
    if ((++visited & 0xff) == 0) check_deadline(opts.deadline);
    auto [f, active] = std::move(queue.front());
    queue.pop_front();
    const FaceFibers ff = label(mesh, active);
    const auto base = static_cast<std::uint32_t>(hv.size());
    for (TriId m : ff.comp_min) hv.emplace_back(f, m);

    std::vector<HalfEdgeId> boundary;
    if (!A.faces()[f].unbounded) boundary = A.cycle(A.faces()[f].outer);
    for (HalfEdgeId s : A.faces()[f].holes)
      for (HalfEdgeId h : A.cycle(s)) boundary.push_back(h);

    for (HalfEdgeId h : boundary) {
      const EdgeId e = A.segment_of(h).edge;
      // Face f lies left of h, which is the upper side iff h runs p -> q.
      const bool fwd = PlanarArrangement::forward(h);
      const auto& out = fwd ? sides.upper[e] : sides.lower[e];
      const auto& in = fwd ? sides.lower[e] : sides.upper[e];

      SideRecord rec;
      std::set<std::uint32_t> hit;
      for (TriId t : out) {
        auto it = std::lower_bound(ff.active.begin(), ff.active.end(), t);
        if (it == ff.active.end() || *it != t) throw InconsistentState("oracle: leaving triangles were not active");
        hit.insert(ff.comp[static_cast<std::size_t>(it - ff.active.begin())]);
      }
      for (std::uint32_t c = 0; c < ff.comp_min.size(); ++c) {
        if (hit.count(c)) rec.affected.push_back(base + c);
        else rec.untouched.emplace_back(ff.comp_min[c], base + c);
      }
      std::sort(rec.untouched.begin(), rec.untouched.end());

      const HalfEdgeId key = h & ~1u;
      auto pit = pending.find(key);
      if (pit == pending.end()) {
        pending.emplace(key, std::move(rec));
      } else {
        const SideRecord& other = pit->second;
        if (other.untouched.size() != rec.untouched.size()) throw InconsistentState("oracle: untouched components differ");
        for (std::size_t i = 0; i < rec.untouched.size(); ++i) {
          if (other.untouched[i].first != rec.untouched[i].first) throw InconsistentState("oracle: untouched components differ");
          hedges.emplace_back(other.untouched[i].second, rec.untouched[i].second);
        }
        if (!sides.critical[e]) {
          if (other.affected.size() != 1 || rec.affected.size() != 1) {
            throw InconsistentState("oracle: regular edge " + std::to_string(e) + " changes fiber topology");
          }
          hedges.emplace_back(other.affected[0], rec.affected[0]);
        } else {
          std::vector<std::uint32_t> g = other.affected;
          g.insert(g.end(), rec.affected.begin(), rec.affected.end());
          if (g.size() >= 2) glue.push_back(std::move(g));
        }
        pending.erase(pit);
      }

      const FaceId nb = A.face_of_halfedge(PlanarArrangement::twin(h));
      if (!reached[nb]) {
        reached[nb] = 1;
        queue.emplace_back(nb, step(ff.active, out, in));
      }
    }
    if (A.faces()[f].unbounded && !ff.active.empty()) throw InconsistentState("oracle: fibers outside the image");
  }
  if (!pending.empty()) throw InconsistentState("oracle: edge seen from one side only");

  // Sheets: components of H, ordered by smallest (face, smallest triangle).
  UnionFind uf(hv.size());
  for (const auto& [a, b] : hedges) uf.unite(a, b);
  std::vector<std::uint32_t> order(hv.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return hv[x] < hv[y]; });
  std::map<std::uint32_t, std::uint32_t> root_sheet;
  std::vector<std::uint32_t> sheet_of(hv.size());
  for (std::uint32_t v : order) sheet_of[v] = root_sheet.emplace(uf.find(v), static_cast<std::uint32_t>(root_sheet.size())).first->second;

  res.sheets.resize(root_sheet.size());
  std::unordered_map<FaceId, Rational> areas;
  for (std::uint32_t v : order) {
    const FaceId f = hv[v].first;
    auto it = areas.find(f);
    if (it == areas.end()) it = areas.emplace(f, A.face_area(f)).first;
    Sheet& s = res.sheets[sheet_of[v]];
    SheetFace sf;
    sf.face = f;
    sf.area = it->second;
    if (opts.with_polygons) sf.polygon = A.face_polygon(f);
    s.area += sf.area;
    s.faces.push_back(std::move(sf));
  }
  std::vector<std::set<std::uint32_t>> adj(res.sheets.size());
  for (const auto& g : glue)
    for (auto a : g)
      for (auto b : g)
        if (sheet_of[a] != sheet_of[b]) adj[sheet_of[a]].insert(sheet_of[b]);
  for (std::uint32_t i = 0; i < res.sheets.size(); ++i) {
    res.sheets[i].id = i;
    res.sheets[i].adjacent.assign(adj[i].begin(), adj[i].end());
  }

  std::sort(hedges.begin(), hedges.end());
  hedges.erase(std::unique(hedges.begin(), hedges.end()), hedges.end());
  res.graph_vertices = hv.size();
  res.graph_edges = hedges.size();
  res.graph_components = res.sheets.size();

  RunStats& st = res.stats;
  st.n_vertices = mesh.num_vertices();
  st.n_tets = mesh.num_tets();
  st.n_triangles = mesh.num_triangles();
  st.n_edges = mesh.num_edges();
  st.boundary_triangles = mesh.boundary_triangle_count();
  st.n_singular = static_cast<std::size_t>(std::count(sides.critical.begin(), sides.critical.end(), 1));
  st.k_s = A.intersection_count();
  st.arr_vertices = A.num_vertices();
  st.arr_edges = A.num_edges();
  st.arr_faces = A.num_faces();
  st.traversal.faces_looped = A.num_faces();
  return res;
}

namespace {

struct Matcher {
  const std::vector<Sheet>& a;
  const std::vector<Sheet>& b;
  std::vector<std::uint32_t> map, used;

  bool adjacent(const std::vector<Sheet>& s, std::uint32_t x, std::uint32_t y) const {
    return std::binary_search(s[x].adjacent.begin(), s[x].adjacent.end(), y);
  }

  bool extend(std::uint32_t i) {
    if (i == a.size()) return true;
    for (std::uint32_t j = 0; j < b.size(); ++j) {
      if (used[j] || b[j].area != a[i].area || b[j].adjacent.size() != a[i].adjacent.size()) continue;
      bool ok = true;
      for (std::uint32_t k = 0; k < i && ok; ++k) ok = adjacent(a, i, k) == adjacent(b, j, map[k]);
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      if (extend(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  }
};

}  // namespace

EquivalenceReport compare(const ReebSpaceResult& a, const ReebSpaceResult& b) {
  EquivalenceReport rep;
  if (a.sheets.size() != b.sheets.size()) {
    rep.discrepancy = "sheet counts differ: " + std::to_string(a.sheets.size()) + " vs " + std::to_string(b.sheets.size());
    return rep;
  }
  const auto aa = sheet_areas(a), ba = sheet_areas(b);
  for (std::size_t i = 0; i < aa.size(); ++i) {
    if (aa[i] != ba[i]) {
      rep.discrepancy = "sheet areas differ: " + to_string(aa[i]) + " vs " + to_string(ba[i]);
      return rep;
    }
  }
  Matcher m{a.sheets, b.sheets, std::vector<std::uint32_t>(a.sheets.size()), std::vector<std::uint32_t>(b.sheets.size())};
  if (!m.extend(0)) {
    rep.discrepancy = "sheet adjacency graphs are not isomorphic under an area-preserving matching";
    return rep;
  }
  rep.equivalent = true;
  return rep;
}

}  // namespace reeb
