#include "reeb/synthetic.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "reeb/error.hpp"

namespace reeb {

const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names{"linear", "smooth", "saddle", "twowell", "noise"};
  return names;
}

namespace {

std::array<double, 2> field(const std::string& name, double x, double y, double z) {
  if (name == "linear") return {x + 0.5 * y + 0.25 * z, y - 0.5 * z + 0.3 * x};
  if (name == "smooth") return {x + 0.5 * y + 0.3 * z * z, y + 0.4 * z + 0.3 * x * x};
  if (name == "saddle") return {x * x - y * y + z / 3.0, x * y + z};
  if (name == "twowell") {
    const double u = x - 0.5;
    return {z, (u * u - 0.06) * (u * u - 0.06) * 40.0 + (y - 0.5) * (y - 0.5) + 0.1 * x};
  }
  if (name == "noise") return {0.0, 0.0};
  throw Error("unknown field '" + name + "'");
}

}  // namespace

TetMesh generate_grid(const GridSpec& spec) {
  if (spec.n < 2) throw Error("grid resolution must be at least 2");
  const std::size_t n = spec.n;
  const std::string name = spec.kind == GridKind::TwoComponent ? "twowell" : spec.field;
  const double h = 1.0 / static_cast<double>(n - 1);

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const bool random_field = name == "noise";

  std::vector<Vertex> verts;
  verts.reserve(n * n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        Vertex v;
        v.x = static_cast<double>(i) * h;
        v.y = static_cast<double>(j) * h;
        v.z = static_cast<double>(k) * h;
        const auto f = field(name, v.x, v.y, v.z);
        const double amp = random_field ? std::max(spec.noise, 1.0) : spec.noise;
        v.f1 = f[0];
        v.f2 = f[1];
        if (amp > 0) {
          v.f1 += amp * unit(rng);
          v.f2 += amp * unit(rng);
        }
        verts.push_back(v);
      }

  auto id = [n](std::size_t i, std::size_t j, std::size_t k) {
    return static_cast<VertexId>(i + n * (j + n * k));
  };
  static const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<VertexId, 4>> tets;
  tets.reserve(6 * (n - 1) * (n - 1) * (n - 1));
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = 0; j + 1 < n; ++j)
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (const auto& p : perms) {
          std::array<std::size_t, 3> c{i, j, k};
          std::array<VertexId, 4> t{};
          t[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            c[p[s]]++;
            t[s + 1] = id(c[0], c[1], c[2]);
          }
          tets.push_back(t);
        }
  return TetMesh::build(std::move(verts), std::move(tets));
}

}  // namespace reeb
