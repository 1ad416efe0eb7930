#pragma once

#include <sstream>
#include <string>

#include "reeb/pipeline.hpp"
#include "reeb/synthetic.hpp"

namespace testing_support {

using namespace reeb;

// T7 vertex ids.
inline constexpr VertexId kA = 0, kB = 1, kV1 = 2, kV2 = 3, kV3 = 4, kV4 = 5, kV5 = 6;

inline TetMesh load_t7() { return load_mesh_file(std::string(REEB_TEST_DATA) + "/t7.tbf"); }

inline TetMesh single_tet(Point2 a, Point2 b, Point2 c, Point2 d) {
  std::vector<Vertex> vs(4);
  const Point2 pts[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    vs[i].x = i == 1;
    vs[i].y = i == 2;
    vs[i].z = i == 3;
    vs[i].f1 = pts[i].x;
    vs[i].f2 = pts[i].y;
  }
  return TetMesh::build(vs, {{0, 1, 2, 3}});
}

inline TetMesh parse(const std::string& text) {
  std::istringstream in(text);
  return load_mesh(in);
}

// Seeded grid with smooth-plus-noise fields, perturbed and checked.
inline TetMesh random_grid(std::uint64_t seed, std::size_t n, double noise = 0.2, const std::string& field = "smooth") {
  GridSpec spec;
  spec.n = n;
  spec.field = field;
  spec.seed = seed;
  spec.noise = noise;
  return prepare_mesh(generate_grid(spec), seed, 1e-4);
}

inline EdgeId edge(const TetMesh& m, VertexId u, VertexId v) { return *m.find_edge(u, v); }

}  // namespace testing_support
