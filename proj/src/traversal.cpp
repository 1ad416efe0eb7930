#include "reeb/traversal.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <unordered_map>

#include "reeb/error.hpp"

namespace reeb {

std::vector<WalkEvent> face_walk(const BoundaryCrossingList& list) {
  std::vector<WalkEvent> walk;
  const auto& entries = list.entries;
  std::uint32_t i = 0;
  for (HalfEdgeId h : list.boundary) {
    while (i < entries.size() && entries[i].half_edge == h && entries[i].corner) {
      walk.push_back({false, h, 0, i});
      ++i;
    }
    std::uint32_t m = 0;
    while (i + m < entries.size() && entries[i + m].half_edge == h && !entries[i + m].corner) ++m;
    for (std::uint32_t w = 0; w <= m; ++w) {
      walk.push_back({true, h, PlanarArrangement::forward(h) ? w : m - w, 0});
      if (w < m) walk.push_back({false, h, 0, i + w});
    }
    i += m;
  }
  if (i != entries.size()) {
    throw InconsistentState("crossing list of face " + std::to_string(list.face) + " is not in boundary order");
  }
  return walk;
}

std::uint32_t FaceLoop::class_of(FiberGraph::Label l) {
  uf.resize(l + 1);
  const std::uint32_t root = uf.find(l);
  for (std::size_t i = 0; i < start_labels.size(); ++i)
    if (uf.find(start_labels[i]) == root) return start_class[i];
  throw InconsistentState("fiber component label " + std::to_string(l) + " belongs to no class");
}

namespace {

void trace_cross(std::ostream* out, const CrossInfo& c) {
  if (!out) return;
  *out << "face " << c.face << ' ' << (c.red ? "red" : "blue") << " edge " << c.edge << ' '
       << (c.to_upper ? "lower->upper" : "upper->lower") << " components " << c.components_before << "->"
       << c.components_after << '\n';
}

}  // namespace

FaceLoop loop_face(const TraversalInput& in, FaceId face, FiberGraph& graph, HalfEdgeId entry_edge,
                   std::uint32_t entry_sub, const std::function<void(HalfEdgeId, std::uint32_t, const FiberGraph&)>& on_piece,
                   const TraversalOptions& opts) {
  const BoundaryCrossingList& list = in.lists.at(face);
  const auto walk = face_walk(list);
  std::size_t start = walk.size();
  for (std::size_t i = 0; i < walk.size(); ++i)
    if (walk[i].piece && walk[i].half_edge == entry_edge && walk[i].sub == entry_sub) start = i;
  if (start == walk.size()) {
    throw InconsistentState("entry piece not on the boundary of face " + std::to_string(face));
  }

  graph.canonicalize();
  const FiberGraph initial = graph;
  FaceLoop loop;
  loop.start_labels = initial.labels();
  loop.uf.resize(loop.start_labels.size());

  for (std::size_t k = 0; k < walk.size(); ++k) {
    const WalkEvent& ev = walk[(start + k) % walk.size()];
    if (ev.piece) {
      on_piece(ev.half_edge, ev.sub, graph);
      continue;
    }
    const QEntry& q = list.entries[ev.entry];
    const EdgeId e = in.red[in.crossings[q.crossing].red].edge;
    CrossInfo info;
    info.face = face;
    info.edge = e;
    info.red = true;
    info.to_upper = q.to_upper;
    info.components_before = graph.component_count();
    const CrossEvent x = cross_segment(graph, in.mesh, in.classes.links, e, q.to_upper);
    info.components_after = graph.component_count();
    info.event = &x;
    for (auto l : x.after) loop.uf.resize(l + 1);
    for (auto a : x.before)
      for (auto b : x.after) loop.uf.unite(a, b);
    trace_cross(opts.trace, info);
    if (opts.on_cross) opts.on_cross(info);
  }

  if (!graph.equivalent(initial)) {
    throw LoopClosureViolation("fiber graph of face " + std::to_string(face) + " changed around its boundary");
  }
  for (const auto& [l, comp] : graph.components()) {
    loop.uf.resize(l + 1);
    loop.uf.unite(l, initial.label_of(comp.min_triangle));
  }

  std::unordered_map<std::uint32_t, std::uint32_t> root_class;
  for (auto l : loop.start_labels) {
    auto [it, inserted] = root_class.emplace(loop.uf.find(l), loop.class_count);
    if (inserted) {
      loop.class_count++;
      loop.multiplicity.push_back(0);
      loop.representative.push_back(initial.components().at(l).min_triangle);
    }
    loop.start_class.push_back(it->second);
    loop.multiplicity[it->second]++;
  }
  return loop;
}

std::size_t SingularCorrespondenceGraph::component_count() const {
  UnionFind uf(vertices.size());
  std::size_t n = vertices.size();
  for (const auto& [a, b] : edges)
    if (uf.unite(a, b)) --n;
  return n;
}

namespace {

struct LocalPiece {
  HalfEdgeId h;
  std::uint32_t sub;
  std::vector<std::pair<TriId, FiberGraph::Label>> untouched;  // by smallest triangle
  std::vector<FiberGraph::Label> affected;
};

struct PendingPiece {
  FaceId face;
  std::vector<std::pair<TriId, std::uint32_t>> untouched;
  std::vector<std::uint32_t> affected;
};

struct Job {
  FaceId face;
  FiberGraph graph;
  HalfEdgeId h;
  std::uint32_t sub;
};

}  // namespace

SingularCorrespondenceGraph bfs_traverse(const TraversalInput& in, const TraversalOptions& opts, TraversalStats* stats) {
  const PlanarArrangement& arr = in.arr;
  const LinkTable& links = in.classes.links;
  TraversalStats local_stats;
  TraversalStats& st = stats ? *stats : local_stats;

  SingularCorrespondenceGraph H;
  std::vector<std::uint8_t> scheduled(arr.num_faces(), 0);
  std::unordered_map<std::uint64_t, PendingPiece> pending;
  std::deque<Job> queue;
  std::size_t queued_triangles = 0;

  // Triangles on the side of h's face and on the other side.
  auto departing = [&](HalfEdgeId h) {
    const EdgeId e = arr.segment_of(h).edge;
    return PlanarArrangement::forward(h) ? links.upper(e) : links.lower(e);
  };
  auto arriving = [&](HalfEdgeId h) {
    const EdgeId e = arr.segment_of(h).edge;
    return PlanarArrangement::forward(h) ? links.lower(e) : links.upper(e);
  };

  auto record = [&](HalfEdgeId h, std::uint32_t sub, const FiberGraph& g) {
    LocalPiece p{h, sub, {}, {}};
    for (TriId t : departing(h)) {
      if (!g.contains(t)) {
        throw InconsistentState("active triangle " + std::to_string(t) + " missing beside edge " +
                                std::to_string(arr.segment_of(h).edge));
      }
      p.affected.push_back(g.label_of(t));
    }
    std::sort(p.affected.begin(), p.affected.end());
    p.affected.erase(std::unique(p.affected.begin(), p.affected.end()), p.affected.end());
    for (const auto& [l, comp] : g.components())
      if (!std::binary_search(p.affected.begin(), p.affected.end(), l)) p.untouched.emplace_back(comp.min_triangle, l);
    std::sort(p.untouched.begin(), p.untouched.end());
    return p;
  };

  auto schedule = [&](FaceId face, HalfEdgeId h, std::uint32_t sub, const FiberGraph& g) {
    const FaceId other = arr.face_of_halfedge(PlanarArrangement::twin(h));
    if (scheduled[other]) return;
    scheduled[other] = 1;
    FiberGraph next = g;
    CrossInfo info;
    info.face = face;
    info.edge = arr.segment_of(h).edge;
    info.to_upper = !PlanarArrangement::forward(h);
    info.components_before = next.component_count();
    const CrossEvent x = cross_segment(next, in.mesh, departing(h), arriving(h));
    info.components_after = next.component_count();
    info.event = &x;
    st.blue_crossings_applied++;
    trace_cross(opts.trace, info);
    if (opts.on_cross) opts.on_cross(info);
    queued_triangles += next.size();
    queue.push_back(Job{other, std::move(next), PlanarArrangement::twin(h), sub});
    st.peak_retained_graphs = std::max(st.peak_retained_graphs, queue.size());
    st.peak_retained_triangles = std::max(st.peak_retained_triangles, queued_triangles);
  };

  auto commit = [&](FaceId face, const LocalPiece& p, const std::function<std::uint32_t(FiberGraph::Label)>& vertex) {
    PendingPiece rec{face, {}, {}};
    for (const auto& [t, l] : p.untouched) rec.untouched.emplace_back(t, vertex(l));
    for (auto l : p.affected) rec.affected.push_back(vertex(l));
    const std::uint64_t key = (static_cast<std::uint64_t>(p.h >> 1) << 32) | p.sub;
    auto it = pending.find(key);
    if (it == pending.end()) {
      pending.emplace(key, std::move(rec));
      return;
    }
    const PendingPiece& other = it->second;
    if (other.untouched.size() != rec.untouched.size()) {
      throw InconsistentState("untouched fiber components disagree across edge " +
                              std::to_string(arr.segment_of(p.h).edge));
    }
    for (std::size_t i = 0; i < rec.untouched.size(); ++i) {
      if (other.untouched[i].first != rec.untouched[i].first) {
        throw InconsistentState("untouched fiber components disagree across edge " +
                                std::to_string(arr.segment_of(p.h).edge));
      }
      H.edges.emplace_back(std::min(other.untouched[i].second, rec.untouched[i].second),
                           std::max(other.untouched[i].second, rec.untouched[i].second));
    }
    if (arr.segment_of(p.h).kind == SegmentKind::PseudoSingular) {
      if (other.affected.size() != 1 || rec.affected.size() != 1) {
        throw InconsistentState("pseudo-singular edge " + std::to_string(arr.segment_of(p.h).edge) +
                                " changes fiber topology");
      }
      H.edges.emplace_back(std::min(other.affected[0], rec.affected[0]), std::max(other.affected[0], rec.affected[0]));
    } else {
      std::vector<std::uint32_t> group = other.affected;
      group.insert(group.end(), rec.affected.begin(), rec.affected.end());
      std::sort(group.begin(), group.end());
      group.erase(std::unique(group.begin(), group.end()), group.end());
      if (group.size() >= 2) H.glue.push_back(std::move(group));
    }
    pending.erase(it);
  };

  // The unbounded face: empty fibers, nothing to loop.
  scheduled[PlanarArrangement::kUnbounded] = 1;
  {
    const auto& list = in.lists.at(PlanarArrangement::kUnbounded);
    if (!list.entries.empty()) throw InconsistentState("regular segment crosses into the unbounded face");
    const FiberGraph empty;
    for (const WalkEvent& ev : face_walk(list)) {
      commit(PlanarArrangement::kUnbounded, record(ev.half_edge, ev.sub, empty),
             [](FiberGraph::Label) -> std::uint32_t { throw InconsistentState("unbounded face has fibers"); });
      schedule(PlanarArrangement::kUnbounded, ev.half_edge, ev.sub, empty);
    }
  }

  while (!queue.empty()) {
    check_deadline(opts.deadline);
    Job job = std::move(queue.front());
    queue.pop_front();
    queued_triangles -= job.graph.size();
    std::vector<LocalPiece> pieces;
    FaceLoop loop = loop_face(
        in, job.face, job.graph, job.h, job.sub,
        [&](HalfEdgeId h, std::uint32_t sub, const FiberGraph& g) {
          pieces.push_back(record(h, sub, g));
          schedule(job.face, h, sub, g);
        },
        opts);
    st.faces_looped++;
    st.loop_closures_checked++;
    st.red_crossings_applied += in.lists[job.face].entries.size();
    const auto base = static_cast<std::uint32_t>(H.vertices.size());
    for (std::uint32_t c = 0; c < loop.class_count; ++c)
      H.vertices.push_back(ClassVertex{job.face, c, loop.multiplicity[c], loop.representative[c]});
    for (const auto& p : pieces) commit(job.face, p, [&](FiberGraph::Label l) { return base + loop.class_of(l); });
  }

  if (!pending.empty()) throw InconsistentState("edge piece visited from one side only");
  for (FaceId f = 0; f < arr.num_faces(); ++f)
    if (!scheduled[f]) throw InconsistentState("face " + std::to_string(f) + " not reached by the traversal");
  std::sort(H.edges.begin(), H.edges.end());
  H.edges.erase(std::unique(H.edges.begin(), H.edges.end()), H.edges.end());
  H.edges.erase(std::remove_if(H.edges.begin(), H.edges.end(), [](const auto& e) { return e.first == e.second; }),
                H.edges.end());
  return H;
}

}  // namespace reeb
