#pragma once

#include <cstdint>
#include <vector>

#include "reeb/arrangement.hpp"
#include "reeb/deadline.hpp"
#include "reeb/exact.hpp"

namespace reeb {

// Incidence of a red (regular) segment with the blue arrangement. Either a
// proper crossing in the interior of an arrangement edge, or a contact at an
// arrangement vertex where the red segment ends.
struct Crossing {
  enum class Feature : std::uint8_t { Edge, Vertex };

  std::uint32_t red = kNone;         // index into the red list
  Feature feature = Feature::Edge;
  HalfEdgeId half_edge = kNone;      // forward half-edge for Edge crossings
  ArrVertexId vertex = kNone;        // for Vertex contacts
  RationalPoint point;
  Rational t;                        // along the blue source segment, from its p; Edge only
};

// All red/blue incidences, sorted by (red, feature, position). Throws a
// Degeneracy for any contact other than a proper crossing or a shared
// endpoint.
std::vector<Crossing> red_blue(const PlanarArrangement& arr, const std::vector<RangeSegment>& red,
                               const Deadline* deadline = nullptr);

std::size_t proper_crossing_count(const std::vector<Crossing>& crossings);

struct QEntry {
  std::uint32_t crossing = kNone;  // index into the crossing list
  HalfEdgeId half_edge = kNone;    // boundary half-edge carrying it; for corners, the half-edge leaving the vertex
  bool corner = false;             // at the origin of half_edge
  bool to_upper = false;           // walking the boundary counterclockwise crosses the red segment lower -> upper
};

// Circular counterclockwise list of red crossings along one face boundary,
// started at the smallest half-edge of the boundary.
struct BoundaryCrossingList {
  FaceId face = kNone;
  std::vector<HalfEdgeId> boundary;  // the boundary cycle in walking order
  std::vector<QEntry> entries;
};

// One list per face of arr (the unbounded face included, with its hole cycles
// concatenated).
std::vector<BoundaryCrossingList> build_crossing_lists(const PlanarArrangement& arr, const std::vector<RangeSegment>& red,
                                                       const std::vector<Crossing>& crossings);

struct EssentialFaceDescriptor {
  FaceId face = kNone;
  std::uint32_t first = kNone;  // entry positions in the list; both kNone for a face without crossings
  std::uint32_t second = kNone;
};

std::vector<EssentialFaceDescriptor> essential_descriptors(const BoundaryCrossingList& list);

}  // namespace reeb
