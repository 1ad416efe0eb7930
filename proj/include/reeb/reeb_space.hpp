#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reeb/arrangement.hpp"
#include "reeb/traversal.hpp"

namespace reeb {

struct SheetFace {
  FaceId face = kNone;
  std::uint32_t multiplicity = 1;
  Rational area;
  std::vector<RationalPoint> polygon;  // empty unless geometry was requested
};

struct Sheet {
  std::uint32_t id = 0;
  std::vector<SheetFace> faces;  // one entry per class component, by face id
  Rational area;                 // sum of face areas times multiplicity
  std::vector<std::uint32_t> adjacent;
};

// Counts and timings of one run. Timings and memory are reported by the
// stats output only, so computed documents stay byte-stable.
struct RunStats {
  std::size_t n_vertices = 0, n_tets = 0, n_triangles = 0, n_edges = 0;
  std::size_t boundary_triangles = 0;
  std::size_t n_singular = 0, n_definite = 0, n_indefinite = 0, n_pseudo = 0;
  std::size_t k_s = 0;              // crossings inside the singular arrangement (or the full one)
  std::size_t k_r = 0;              // proper red/blue crossings
  std::size_t vertex_contacts = 0;  // red segments ending on a singular vertex point
  std::size_t arr_vertices = 0, arr_edges = 0, arr_faces = 0;
  std::size_t q_total = 0, q_max = 0;
  TraversalStats traversal;
  std::vector<std::pair<std::string, double>> timings;  // seconds per stage
  long peak_memory_kb = -1;

  double singular_fraction() const { return n_edges ? static_cast<double>(n_singular) / n_edges : 0.0; }
};

struct ReebSpaceResult {
  std::string algorithm;  // "singular" or "full"
  std::vector<Sheet> sheets;
  std::size_t graph_vertices = 0, graph_edges = 0, graph_components = 0;
  RunStats stats;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

// One sheet per connected component of H, ordered by smallest (face, class).
std::vector<Sheet> extract_sheets(const SingularCorrespondenceGraph& h, const PlanarArrangement& arr,
                                  bool with_polygons = true);

// Sheets meet where a singular piece changes fiber topology; every pair of
// sheets involved in one such change is adjacent. Fills Sheet::adjacent.
void sheet_adjacency(std::vector<Sheet>& sheets, const SingularCorrespondenceGraph& h);

nlohmann::ordered_json stats_to_json(const RunStats& s, bool with_timings);
nlohmann::ordered_json serialize(const ReebSpaceResult& r);

// Multiset of sheet areas, sorted.
std::vector<Rational> sheet_areas(const ReebSpaceResult& r);

}  // namespace reeb
