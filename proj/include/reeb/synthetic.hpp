#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reeb/mesh.hpp"

namespace reeb {

// Named analytic field pairs on [0,1]^3:
//   linear    f = (x + y/2 + z/4, y - z/2 + 3x/10)
//   smooth    gentle quadratic bend of linear, few singular edges
//   saddle    f = (x^2 - y^2 + z/3, xy + z)
//   twowell   f = (z, double well in x plus a bowl in y); fibers split in two
//   noise     seeded noise only
const std::vector<std::string>& field_names();

enum class GridKind { Grid, TwoComponent };

struct GridSpec {
  GridKind kind = GridKind::Grid;
  std::size_t n = 3;             // vertices per axis
  std::string field = "smooth";  // ignored for TwoComponent, which uses twowell
  std::uint64_t seed = 0;
  double noise = 0.0;            // amplitude of uniform noise added to both fields
};

// n^3 vertices on the unit cube; each cell split into 6 tetrahedra around its
// main diagonal. Deterministic in the spec.
TetMesh generate_grid(const GridSpec& spec);

}  // namespace reeb
