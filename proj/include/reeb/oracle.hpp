#pragma once

#include <string>

#include "reeb/deadline.hpp"
#include "reeb/mesh.hpp"
#include "reeb/reeb_space.hpp"

namespace reeb {

struct OracleOptions {
  const Deadline* deadline = nullptr;
  bool with_polygons = true;
};

// Reference computation over the arrangement of every edge image: one fiber
// graph per face, built from scratch, and a correspondence graph over their
// components. Shares only the mesh, exact kernel and arrangement code with the
// singular pipeline. Throws Cancelled when the deadline passes.
ReebSpaceResult full_arrange_and_traverse(const TetMesh& mesh, const OracleOptions& opts = {});

struct EquivalenceReport {
  bool equivalent = false;
  std::string discrepancy;  // first difference found, empty when equivalent
};

// Equal sheet counts, equal multisets of exact areas, and an area-preserving
// isomorphism of the sheet adjacency graphs (found by exhaustive search).
EquivalenceReport compare(const ReebSpaceResult& a, const ReebSpaceResult& b);

}  // namespace reeb
