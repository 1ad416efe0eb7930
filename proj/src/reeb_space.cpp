#include "reeb/reeb_space.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "reeb/union_find.hpp"

namespace reeb {

namespace {

std::vector<std::uint32_t> sheet_of_vertex(const SingularCorrespondenceGraph& h, std::size_t* count) {
  UnionFind uf(h.vertices.size());
  for (const auto& [a, b] : h.edges) uf.unite(a, b);
  // Vertices are created face by face in traversal order, so order roots by
  // their smallest (face, index) member.
  std::vector<std::uint32_t> order(h.vertices.size());
  for (std::uint32_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto& a = h.vertices[x];
    const auto& b = h.vertices[y];
    return a.face != b.face ? a.face < b.face : a.index < b.index;
  });
  std::map<std::uint32_t, std::uint32_t> root_sheet;
  std::vector<std::uint32_t> sheet(h.vertices.size());
  for (std::uint32_t v : order) {
    auto [it, inserted] = root_sheet.emplace(uf.find(v), static_cast<std::uint32_t>(root_sheet.size()));
    sheet[v] = it->second;
  }
  if (count) *count = root_sheet.size();
  return sheet;
}

}  // namespace

std::vector<Sheet> extract_sheets(const SingularCorrespondenceGraph& h, const PlanarArrangement& arr,
                                  bool with_polygons) {
  std::size_t n = 0;
  const auto sheet = sheet_of_vertex(h, &n);
  std::vector<Sheet> sheets(n);
  for (std::uint32_t i = 0; i < n; ++i) sheets[i].id = i;
  std::map<FaceId, Rational> area_cache;
  for (std::uint32_t v = 0; v < h.vertices.size(); ++v) {
    const ClassVertex& cv = h.vertices[v];
    auto it = area_cache.find(cv.face);
    if (it == area_cache.end()) it = area_cache.emplace(cv.face, arr.face_area(cv.face)).first;
    SheetFace sf;
    sf.face = cv.face;
    sf.multiplicity = cv.multiplicity;
    sf.area = it->second;
    if (with_polygons) sf.polygon = arr.face_polygon(cv.face);
    sheets[sheet[v]].area += sf.area * cv.multiplicity;
    sheets[sheet[v]].faces.push_back(std::move(sf));
  }
  for (auto& s : sheets) {
    std::stable_sort(s.faces.begin(), s.faces.end(),
                     [](const SheetFace& a, const SheetFace& b) { return a.face < b.face; });
  }
  sheet_adjacency(sheets, h);
  return sheets;
}

void sheet_adjacency(std::vector<Sheet>& sheets, const SingularCorrespondenceGraph& h) {
  const auto sheet = sheet_of_vertex(h, nullptr);
  std::vector<std::set<std::uint32_t>> adj(sheets.size());
  for (const auto& group : h.glue) {
    std::set<std::uint32_t> ids;
    for (auto v : group) ids.insert(sheet[v]);
    for (auto a : ids)
      for (auto b : ids)
        if (a != b) adj[a].insert(b);
  }
  for (std::size_t i = 0; i < sheets.size(); ++i) sheets[i].adjacent.assign(adj[i].begin(), adj[i].end());
}

nlohmann::ordered_json stats_to_json(const RunStats& s, bool with_timings) {
  nlohmann::ordered_json j;
  j["N_v"] = s.n_vertices;
  j["N_T"] = s.n_tets;
  j["N_t"] = s.n_triangles;
  j["N_e"] = s.n_edges;
  j["boundary_triangles"] = s.boundary_triangles;
  j["N_s"] = s.n_singular;
  j["definite"] = s.n_definite;
  j["indefinite"] = s.n_indefinite;
  j["singular_fraction"] = s.singular_fraction();
  j["pseudo_singular"] = s.n_pseudo;
  j["k_s"] = s.k_s;
  j["k_r"] = s.k_r;
  j["vertex_contacts"] = s.vertex_contacts;
  j["arrangement"] = {{"vertices", s.arr_vertices}, {"edges", s.arr_edges}, {"faces", s.arr_faces}};
  j["q_total"] = s.q_total;
  j["q_max"] = s.q_max;
  j["traversal"] = {{"faces_looped", s.traversal.faces_looped},
                    {"red_crossings", s.traversal.red_crossings_applied},
                    {"blue_crossings", s.traversal.blue_crossings_applied},
                    {"peak_retained_graphs", s.traversal.peak_retained_graphs},
                    {"peak_retained_triangles", s.traversal.peak_retained_triangles}};
  if (with_timings) {
    auto& t = j["timings_s"] = nlohmann::ordered_json::object();
    for (const auto& [name, sec] : s.timings) t[name] = sec;
    j["peak_memory_kb"] = s.peak_memory_kb;
  }
  return j;
}

nlohmann::ordered_json serialize(const ReebSpaceResult& r) {
  nlohmann::ordered_json j;
  j["format"] = "reeb-space/1";
  j["algorithm"] = r.algorithm;
  j["metadata"] = r.metadata;
  j["stats"] = stats_to_json(r.stats, false);
  j["sheet_count"] = r.sheets.size();
  auto& sheets = j["sheets"] = nlohmann::ordered_json::array();
  for (const Sheet& s : r.sheets) {
    nlohmann::ordered_json js;
    js["id"] = s.id;
    js["area"] = to_string(s.area);
    auto& faces = js["faces"] = nlohmann::ordered_json::array();
    for (const SheetFace& f : s.faces) {
      nlohmann::ordered_json jf;
      jf["face"] = f.face;
      jf["multiplicity"] = f.multiplicity;
      jf["area"] = to_string(f.area);
      auto& poly = jf["polygon"] = nlohmann::ordered_json::array();
      for (const auto& p : f.polygon) poly.push_back({to_string(p.x), to_string(p.y)});
      faces.push_back(std::move(jf));
    }
    js["adjacent"] = s.adjacent;
    sheets.push_back(std::move(js));
  }
  j["correspondence_graph"] = {
      {"vertices", r.graph_vertices}, {"edges", r.graph_edges}, {"components", r.graph_components}};
  return j;
}

std::vector<Rational> sheet_areas(const ReebSpaceResult& r) {
  std::vector<Rational> out;
  for (const auto& s : r.sheets) out.push_back(s.area);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reeb
