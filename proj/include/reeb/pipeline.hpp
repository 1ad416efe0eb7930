#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "reeb/deadline.hpp"
#include "reeb/jacobi.hpp"
#include "reeb/oracle.hpp"
#include "reeb/red_blue.hpp"
#include "reeb/reeb_space.hpp"
#include "reeb/traversal.hpp"

namespace reeb {

enum class Algorithm { Singular, Full };
const char* to_string(Algorithm a);

struct ComputeOptions {
  Algorithm algorithm = Algorithm::Singular;
  std::uint64_t seed = 0;
  double perturb = 0.0;  // 0 disables perturbation
  bool with_polygons = true;
  std::ostream* trace = nullptr;
  std::function<void(const CrossInfo&)> on_cross;
  const Deadline* deadline = nullptr;
};

// Applies the perturbation (if any) and rejects coincident vertex images and
// flat triangle images with a Degeneracy.
TetMesh prepare_mesh(const TetMesh& mesh, std::uint64_t seed, double strength);

// Intermediate products of the singular pipeline, kept for inspection.
struct SingularStages {
  Classification classes;
  ConnectResult connect;                      // augmented singular set and its arrangement
  std::vector<RangeSegment> red;
  std::vector<Crossing> crossings;
  std::vector<BoundaryCrossingList> lists;
  SingularCorrespondenceGraph graph;
};

// Stages I-III on an already prepared mesh. Fills stats counts and timings.
SingularStages run_singular(const TetMesh& mesh, const ComputeOptions& opts, RunStats* stats = nullptr);

// Full pipeline: prepare, then the chosen algorithm. Output carries seed and
// perturbation metadata; timings live only in result.stats.
ReebSpaceResult compute(const TetMesh& mesh, const ComputeOptions& opts);

// Peak resident set size of this process in KiB, or -1 when unavailable.
long peak_memory_kb();

}  // namespace reeb
