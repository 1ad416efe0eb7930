#include "reeb/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "reeb/error.hpp"

namespace reeb {

const char* to_string(Algorithm a) { return a == Algorithm::Singular ? "singular" : "full"; }

namespace {

class StageTimer {
 public:
  explicit StageTimer(RunStats* s) : stats_(s), last_(std::chrono::steady_clock::now()) {}
  void lap(const char* name) {
    const auto now = std::chrono::steady_clock::now();
    if (stats_) stats_->timings.emplace_back(name, std::chrono::duration<double>(now - last_).count());
    last_ = now;
  }

 private:
  RunStats* stats_;
  std::chrono::steady_clock::time_point last_;
};

}  // namespace

TetMesh prepare_mesh(const TetMesh& mesh, std::uint64_t seed, double strength) {
  if (strength < 0) throw Error("perturbation strength must not be negative");
  TetMesh out = strength > 0 ? perturb(mesh, seed, strength) : mesh;
  const auto bad = genericity_check(out, GenericityScope::Local);
  if (!bad.empty()) {
    const auto& v = bad.front();
    if (v.kind == GenericityViolation::Kind::CoincidentVertices) throw CoincidentVertexDegeneracy(v.describe());
    throw DegenerateOrientation(v.describe());
  }
  return out;
}

SingularStages run_singular(const TetMesh& mesh, const ComputeOptions& opts, RunStats* stats) {
  StageTimer timer(stats);
  SingularStages s;
  s.classes = classify_all(mesh);
  timer.lap("classify");
  s.connect = connect_nested(mesh, s.classes.singular, opts.deadline);
  timer.lap("arrangement");

  for (EdgeId e = 0; e < mesh.num_edges(); ++e)
    if (!s.connect.set.contains(e)) s.red.push_back(make_segment(mesh, e, SegmentKind::Regular));
  s.crossings = red_blue(s.connect.arrangement, s.red, opts.deadline);
  s.lists = build_crossing_lists(s.connect.arrangement, s.red, s.crossings);
  timer.lap("red_blue");

  TraversalOptions topts;
  topts.trace = opts.trace;
  topts.on_cross = opts.on_cross;
  topts.deadline = opts.deadline;
  TraversalStats tstats;
  s.graph = bfs_traverse(TraversalInput{mesh, s.classes, s.connect.arrangement, s.red, s.crossings, s.lists}, topts,
                         &tstats);
  timer.lap("traverse");

  if (stats) {
    RunStats& st = *stats;
    st.n_vertices = mesh.num_vertices();
    st.n_tets = mesh.num_tets();
    st.n_triangles = mesh.num_triangles();
    st.n_edges = mesh.num_edges();
    st.boundary_triangles = mesh.boundary_triangle_count();
    st.n_singular = s.classes.singular.singular_edges.size();
    st.n_definite = st.n_indefinite = 0;
    for (const auto& c : s.classes.classes) {
      st.n_definite += c.type == EdgeType::Definite;
      st.n_indefinite += c.type == EdgeType::Indefinite;
    }
    st.n_pseudo = s.connect.added;
    const auto& arr = s.connect.arrangement;
    st.k_s = arr.intersection_count();
    st.k_r = proper_crossing_count(s.crossings);
    st.vertex_contacts = s.crossings.size() - st.k_r;
    st.arr_vertices = arr.num_vertices();
    st.arr_edges = arr.num_edges();
    st.arr_faces = arr.num_faces();
    st.q_total = st.q_max = 0;
    for (const auto& l : s.lists) {
      st.q_total += l.entries.size();
      st.q_max = std::max(st.q_max, l.entries.size());
    }
    st.traversal = tstats;
  }
  return s;
}

ReebSpaceResult compute(const TetMesh& input, const ComputeOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const TetMesh mesh = prepare_mesh(input, opts.seed, opts.perturb);
  const double prep = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ReebSpaceResult res;
  if (opts.algorithm == Algorithm::Full) {
    const auto t1 = std::chrono::steady_clock::now();
    OracleOptions o;
    o.deadline = opts.deadline;
    o.with_polygons = opts.with_polygons;
    res = full_arrange_and_traverse(mesh, o);
    res.stats.timings.emplace_back("full", std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count());
  } else {
    res.algorithm = "singular";
    SingularStages s = run_singular(mesh, opts, &res.stats);
    const auto t1 = std::chrono::steady_clock::now();
    res.sheets = extract_sheets(s.graph, s.connect.arrangement, opts.with_polygons);
    res.graph_vertices = s.graph.vertices.size();
    res.graph_edges = s.graph.edges.size();
    res.graph_components = res.sheets.size();
    res.stats.timings.emplace_back("sheets", std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count());
  }
  res.stats.timings.insert(res.stats.timings.begin(), {"prepare", prep});
  double total = 0;
  for (const auto& [n, t] : res.stats.timings) total += t;
  res.stats.timings.emplace_back("total", total);
  res.stats.peak_memory_kb = peak_memory_kb();
  res.metadata["seed"] = opts.seed;
  res.metadata["perturbation"] = opts.perturb;
  res.metadata["prng"] = kPerturbationPrng;
  return res;
}

long peak_memory_kb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream ss(line.substr(6));
      long kb = -1;
      ss >> kb;
      return kb;
    }
  }
  return -1;
}

}  // namespace reeb
