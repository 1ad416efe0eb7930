#include "reeb/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "reeb/error.hpp"

namespace reeb {

namespace {

template <class T>
void build_csr(std::size_t n, const std::vector<std::pair<std::uint32_t, T>>& pairs, std::vector<std::uint32_t>& offset,
               std::vector<T>& data) {
  offset.assign(n + 1, 0);
  for (const auto& [k, v] : pairs) offset[k + 1]++;
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  data.resize(pairs.size());
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (const auto& [k, v] : pairs) data[cursor[k]++] = v;
}

}  // namespace

TetMesh TetMesh::build(std::vector<Vertex> vertices, std::vector<std::array<VertexId, 4>> tets) {
  if (tets.empty()) throw InvalidMesh("mesh has zero tetrahedra");
  const std::size_t nv = vertices.size();
  for (std::size_t i = 0; i < tets.size(); ++i) {
    auto& t = tets[i];
    for (VertexId v : t) {
      if (v >= nv) {
        throw InvalidMesh("tetrahedron " + std::to_string(i) + " references vertex " + std::to_string(v) +
                          " but only " + std::to_string(nv) + " vertices exist");
      }
    }
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw InvalidMesh("tetrahedron " + std::to_string(i) + " repeats a vertex");
    }
  }
  {
    std::vector<std::uint32_t> order(tets.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return tets[a] < tets[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (tets[order[i]] == tets[order[i - 1]]) {
        throw InvalidMesh("duplicate tetrahedron " + std::to_string(order[i]));
      }
    }
  }

  TetMesh m;
  m.vertices_ = std::move(vertices);
  m.tets_ = std::move(tets);
  const auto nt = static_cast<std::uint32_t>(m.tets_.size());

  for (const auto& t : m.tets_) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) m.edges_.push_back({t[i], t[j]});
  }
  std::sort(m.edges_.begin(), m.edges_.end());
  m.edges_.erase(std::unique(m.edges_.begin(), m.edges_.end()), m.edges_.end());

  // Triangles, grouped by vertex triple; each group lists its tetrahedra.
  struct TriRef {
    std::array<VertexId, 3> v;
    TetId tet;
    int slot;
  };
  std::vector<TriRef> refs;
  refs.reserve(4 * m.tets_.size());
  for (TetId t = 0; t < nt; ++t) {
    const auto& q = m.tets_[t];
    refs.push_back({{q[1], q[2], q[3]}, t, 0});
    refs.push_back({{q[0], q[2], q[3]}, t, 1});
    refs.push_back({{q[0], q[1], q[3]}, t, 2});
    refs.push_back({{q[0], q[1], q[2]}, t, 3});
  }
  std::sort(refs.begin(), refs.end(), [](const TriRef& a, const TriRef& b) {
    return a.v != b.v ? a.v < b.v : a.tet < b.tet;
  });
  m.tet_tri_.resize(nt);
  std::vector<std::pair<std::uint32_t, TetId>> tri_tet_pairs;
  for (std::size_t i = 0; i < refs.size();) {
    std::size_t j = i;
    const auto id = static_cast<TriId>(m.triangles_.size());
    while (j < refs.size() && refs[j].v == refs[i].v) {
      m.tet_tri_[refs[j].tet][refs[j].slot] = id;
      tri_tet_pairs.emplace_back(id, refs[j].tet);
      ++j;
    }
    if (j - i > 2) {
      throw InvalidMesh("triangle (" + std::to_string(refs[i].v[0]) + "," + std::to_string(refs[i].v[1]) + "," +
                        std::to_string(refs[i].v[2]) + ") is shared by " + std::to_string(j - i) + " tetrahedra");
    }
    if (j - i == 1) m.boundary_triangles_++;
    m.triangles_.push_back(refs[i].v);
    i = j;
  }
  build_csr(m.triangles_.size(), tri_tet_pairs, m.tri_tet_offset_, m.tri_tet_);

  std::vector<std::pair<std::uint32_t, TriId>> edge_tri_pairs;
  m.tri_edge_.resize(m.triangles_.size());
  for (TriId t = 0; t < m.triangles_.size(); ++t) {
    const auto& v = m.triangles_[t];
    const std::array<std::array<VertexId, 2>, 3> es{{{v[0], v[1]}, {v[0], v[2]}, {v[1], v[2]}}};
    for (int k = 0; k < 3; ++k) {
      EdgeId e = *m.find_edge(es[k][0], es[k][1]);
      m.tri_edge_[t][k] = e;
      edge_tri_pairs.emplace_back(e, t);
    }
  }
  build_csr(m.edges_.size(), edge_tri_pairs, m.edge_tri_offset_, m.edge_tri_);

  std::vector<std::pair<std::uint32_t, TetId>> edge_tet_pairs;
  for (TetId t = 0; t < nt; ++t) {
    const auto& q = m.tets_[t];
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) edge_tet_pairs.emplace_back(*m.find_edge(q[i], q[j]), t);
  }
  build_csr(m.edges_.size(), edge_tet_pairs, m.edge_tet_offset_, m.edge_tet_);

  std::vector<std::pair<std::uint32_t, EdgeId>> vertex_edge_pairs;
  for (EdgeId e = 0; e < m.edges_.size(); ++e) {
    vertex_edge_pairs.emplace_back(m.edges_[e][0], e);
    vertex_edge_pairs.emplace_back(m.edges_[e][1], e);
  }
  build_csr(nv, vertex_edge_pairs, m.vertex_edge_offset_, m.vertex_edge_);

  // Each triangle has three edges, so the edge degrees sum to 3 N_t.
  std::size_t degree_sum = m.edge_tri_.size();
  if (degree_sum != 3 * m.triangles_.size()) {
    throw InconsistentState("edge degree sum " + std::to_string(degree_sum) + " != 3 * " +
                            std::to_string(m.triangles_.size()));
  }
  return m;
}

std::optional<EdgeId> TetMesh::find_edge(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  const std::array<VertexId, 2> key{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

std::optional<TriId> TetMesh::find_triangle(VertexId u, VertexId v, VertexId w) const {
  std::array<VertexId, 3> key{u, v, w};
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(triangles_.begin(), triangles_.end(), key);
  if (it == triangles_.end() || *it != key) return std::nullopt;
  return static_cast<TriId>(it - triangles_.begin());
}

VertexId TetMesh::opposite_vertex(TriId t, EdgeId e) const {
  const auto& tri = triangles_[t];
  const auto& ed = edges_[e];
  for (VertexId v : tri)
    if (v != ed[0] && v != ed[1]) return v;
  return kNone;
}

TetMesh TetMesh::with_fields(const std::vector<std::array<double, 2>>& fields) const {
  if (fields.size() != vertices_.size()) throw InvalidMesh("field count does not match vertex count");
  TetMesh m = *this;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    m.vertices_[i].f1 = fields[i][0];
    m.vertices_[i].f2 = fields[i][1];
  }
  return m;
}

// ---------------------------------------------------------------------------
// TBF reader / writer

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split into tokens; empty at EOF.
  std::vector<std::string_view> next() {
    tokens_.clear();
    while (std::getline(in_, line_)) {
      ++line_no_;
      std::size_t first = line_.find_first_not_of(" \t\r");
      if (first == std::string::npos || line_[first] == '#') continue;
      std::size_t i = 0;
      while (i < line_.size()) {
        while (i < line_.size() && std::isspace(static_cast<unsigned char>(line_[i]))) ++i;
        std::size_t j = i;
        while (j < line_.size() && !std::isspace(static_cast<unsigned char>(line_[j]))) ++j;
        if (j > i) tokens_.emplace_back(line_.data() + i, j - i);
        i = j;
      }
      return tokens_;
    }
    return tokens_;
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::string line_;
  std::vector<std::string_view> tokens_;
  std::size_t line_no_ = 0;
};

template <class T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  }
  return value;
}

std::size_t expect_header(LineReader& r, std::string_view keyword) {
  auto toks = r.next();
  if (toks.size() != 2 || toks[0] != keyword) {
    throw ParseError(r.line(), "expected '" + std::string(keyword) + " <count>'");
  }
  return parse_number<std::size_t>(toks[1], r.line());
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

TetMesh load_mesh(std::istream& in) {
  LineReader r(in);
  auto toks = r.next();
  if (toks.size() != 2 || toks[0] != "tbf" || toks[1] != "1") throw ParseError(r.line(), "expected 'tbf 1' header");

  const std::size_t nv = expect_header(r, "vertices");
  std::vector<Vertex> vertices;
  vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    toks = r.next();
    if (toks.empty()) throw ParseError(r.line(), "expected " + std::to_string(nv) + " vertices, got " + std::to_string(i));
    if (toks.size() != 5) throw ParseError(r.line(), "vertex line needs 5 values 'x y z f1 f2'");
    Vertex v;
    v.x = parse_number<double>(toks[0], r.line());
    v.y = parse_number<double>(toks[1], r.line());
    v.z = parse_number<double>(toks[2], r.line());
    v.f1 = parse_number<double>(toks[3], r.line());
    v.f2 = parse_number<double>(toks[4], r.line());
    vertices.push_back(v);
  }

  const std::size_t nt = expect_header(r, "tets");
  std::vector<std::array<VertexId, 4>> tets;
  tets.reserve(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    toks = r.next();
    if (toks.empty()) throw ParseError(r.line(), "expected " + std::to_string(nt) + " tets, got " + std::to_string(i));
    if (toks.size() != 4) throw ParseError(r.line(), "tet line needs 4 vertex indices");
    std::array<VertexId, 4> t{};
    for (int k = 0; k < 4; ++k) t[k] = parse_number<VertexId>(toks[k], r.line());
    tets.push_back(t);
  }
  if (!r.next().empty()) throw ParseError(r.line(), "trailing content after tets");
  return TetMesh::build(std::move(vertices), std::move(tets));
}

TetMesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  if (path.size() > 4 && path.substr(path.size() - 4) == ".vtk") return load_vtk_legacy(in);
  return load_mesh(in);
}

void write_mesh(std::ostream& out, const TetMesh& mesh) {
  out << "tbf 1\n";
  out << "vertices " << mesh.num_vertices() << "\n";
  for (const auto& v : mesh.vertices()) {
    out << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << ' ' << format_double(v.f1)
        << ' ' << format_double(v.f2) << '\n';
  }
  out << "tets " << mesh.num_tets() << "\n";
  for (const auto& t : mesh.tets()) out << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
}

// ---------------------------------------------------------------------------
// Legacy VTK (ASCII) importer. Only what is needed for tetrahedral grids.

TetMesh load_vtk_legacy(std::istream& in, const std::string& f1_name, const std::string& f2_name) {
  std::vector<std::string> words;
  std::vector<std::size_t> word_line;
  {
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
      ++ln;
      if (ln <= 2) continue;  // version line and title
      std::istringstream ls(line);
      std::string w;
      while (ls >> w) {
        words.push_back(w);
        word_line.push_back(ln);
      }
    }
  }
  std::size_t pos = 0;
  auto need = [&](std::size_t n) {
    if (pos + n > words.size()) throw ParseError(word_line.empty() ? 0 : word_line.back(), "unexpected end of VTK file");
  };
  auto take = [&]() -> const std::string& {
    need(1);
    return words[pos++];
  };
  auto line_at = [&]() { return pos < word_line.size() ? word_line[pos] : (word_line.empty() ? 0 : word_line.back()); };

  if (take() != "ASCII") throw ParseError(line_at(), "only ASCII legacy VTK files are supported");
  std::vector<Vertex> vertices;
  std::vector<std::vector<VertexId>> cells;
  std::vector<int> cell_types;
  std::map<std::string, std::vector<double>> arrays;
  std::vector<std::string> array_order;
  std::size_t npoints = 0;

  while (pos < words.size()) {
    const std::string key = take();
    if (key == "DATASET") {
      if (take() != "UNSTRUCTURED_GRID") throw ParseError(line_at(), "expected UNSTRUCTURED_GRID");
    } else if (key == "POINTS") {
      npoints = parse_number<std::size_t>(take(), line_at());
      take();  // data type
      vertices.resize(npoints);
      for (auto& v : vertices) {
        v.x = std::stod(take());
        v.y = std::stod(take());
        v.z = std::stod(take());
      }
    } else if (key == "CELLS") {
      const auto n = parse_number<std::size_t>(take(), line_at());
      take();
      cells.resize(n);
      for (auto& c : cells) {
        const auto k = parse_number<std::size_t>(take(), line_at());
        c.resize(k);
        for (auto& v : c) v = parse_number<VertexId>(take(), line_at());
      }
    } else if (key == "CELL_TYPES") {
      const auto n = parse_number<std::size_t>(take(), line_at());
      cell_types.resize(n);
      for (auto& t : cell_types) t = parse_number<int>(take(), line_at());
    } else if (key == "POINT_DATA" || key == "CELL_DATA") {
      take();
    } else if (key == "SCALARS") {
      const std::string name = take();
      take();  // type
      need(1);
      std::size_t components = 1;
      if (words[pos] != "LOOKUP_TABLE") components = parse_number<std::size_t>(take(), line_at());
      if (take() != "LOOKUP_TABLE") throw ParseError(line_at(), "expected LOOKUP_TABLE");
      take();
      std::vector<double> values(npoints * components);
      for (auto& v : values) v = std::stod(take());
      if (components == 1) {
        arrays[name] = std::move(values);
        array_order.push_back(name);
      }
    } else if (key == "FIELD") {
      take();
      const auto n = parse_number<std::size_t>(take(), line_at());
      for (std::size_t a = 0; a < n; ++a) {
        const std::string name = take();
        const auto comps = parse_number<std::size_t>(take(), line_at());
        const auto tuples = parse_number<std::size_t>(take(), line_at());
        take();
        std::vector<double> values(comps * tuples);
        for (auto& v : values) v = std::stod(take());
        if (comps == 1 && tuples == npoints) {
          arrays[name] = std::move(values);
          array_order.push_back(name);
        }
      }
    } else {
      throw ParseError(line_at(), "unsupported VTK keyword '" + key + "'");
    }
  }

  auto pick = [&](const std::string& want, std::size_t idx) -> const std::vector<double>& {
    if (!want.empty()) {
      auto it = arrays.find(want);
      if (it == arrays.end()) throw ParseError(0, "scalar array '" + want + "' not found");
      return it->second;
    }
    if (array_order.size() <= idx) throw ParseError(0, "VTK file needs two scalar point-data arrays");
    return arrays.at(array_order[idx]);
  };
  const auto& a1 = pick(f1_name, 0);
  const auto& a2 = pick(f2_name, 1);
  for (std::size_t i = 0; i < npoints; ++i) {
    vertices[i].f1 = a1[i];
    vertices[i].f2 = a2[i];
  }
  std::vector<std::array<VertexId, 4>> tets;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const int type = i < cell_types.size() ? cell_types[i] : 10;
    if (type != 10 || cells[i].size() != 4) continue;
    tets.push_back({cells[i][0], cells[i][1], cells[i][2], cells[i][3]});
  }
  return TetMesh::build(std::move(vertices), std::move(tets));
}

// ---------------------------------------------------------------------------

EdgeLink edge_link(const TetMesh& mesh, EdgeId edge) {
  if (edge >= mesh.num_edges()) throw UnknownSimplex("unknown edge " + std::to_string(edge));
  EdgeLink link;
  for (TriId t : mesh.edge_triangles(edge)) link.vertices.push_back(mesh.opposite_vertex(t, edge));
  std::sort(link.vertices.begin(), link.vertices.end());
  const auto& e = mesh.edges()[edge];
  for (TetId t : mesh.edge_tets(edge)) {
    std::array<VertexId, 2> uv{};
    int k = 0;
    for (VertexId v : mesh.tets()[t])
      if (v != e[0] && v != e[1]) uv[k++] = v;
    link.edges.push_back(uv);
  }
  std::sort(link.edges.begin(), link.edges.end());
  return link;
}

std::size_t edge_degree(const TetMesh& mesh, EdgeId edge) {
  if (edge >= mesh.num_edges()) throw UnknownSimplex("unknown edge " + std::to_string(edge));
  return mesh.edge_triangles(edge).size();
}

}  // namespace reeb
