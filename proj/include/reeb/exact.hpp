#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reeb/mesh.hpp"

namespace reeb {

using Rational = mpq_class;

std::string to_string(const Rational& q);  // "p/q", always with a denominator

struct RationalPoint {
  Rational x, y;

  RationalPoint() = default;
  RationalPoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  explicit RationalPoint(Point2 p) : x(p.x), y(p.y) {}

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    int c = cmp(a.x, b.x);
    return c != 0 ? c < 0 : a.y < b.y;
  }
  Point2 approx() const { return {x.get_d(), y.get_d()}; }
};

struct RationalPointHash {
  std::size_t operator()(const RationalPoint& p) const;
};

// Sign of the determinant of (q - p, r - p).
int orient2d(const RationalPoint& p, const RationalPoint& q, const RationalPoint& r);
// Same predicate on double inputs; floating-point filter with an exact
// fallback, so the result always equals the exact sign.
int orient2d(Point2 p, Point2 q, Point2 r);
// Sign of cross(b - a, d - c), exact.
int cross_sign(Point2 a, Point2 b, Point2 c, Point2 d);
// Sign of dot(b - a, d - c), exact.
int dot_sign(Point2 a, Point2 b, Point2 c, Point2 d);

enum class SegmentKind : std::uint8_t { Regular, Singular, PseudoSingular };
const char* to_string(SegmentKind k);

// Image of a mesh edge. p = f(a), q = f(b) with a < b, so the canonical
// direction of a segment follows the vertex order of its edge, and "upper"
// means left of p -> q.
struct RangeSegment {
  EdgeId edge = kNone;
  VertexId a = kNone, b = kNone;
  Point2 p, q;
  SegmentKind kind = SegmentKind::Regular;

  RationalPoint exact_p() const { return RationalPoint(p); }
  RationalPoint exact_q() const { return RationalPoint(q); }
};

RangeSegment make_segment(const TetMesh& mesh, EdgeId e, SegmentKind kind);

// Point where two closed segments meet, if they meet in exactly one point.
// Throws OverlapDegeneracy when they share more than one point.
std::optional<RationalPoint> segment_intersection(const RangeSegment& s1, const RangeSegment& s2);

// Parameter t in [0, 1] of the point where the line through `other` meets
// segment s, measured from s.p. Requires the lines not to be parallel.
Rational crossing_parameter(const RangeSegment& s, const RangeSegment& other);
RationalPoint point_at(const RangeSegment& s, const Rational& t);

struct GenericityViolation {
  enum class Kind { CoincidentVertices, CollinearVertices, TripleIntersection };
  Kind kind;
  std::vector<VertexId> vertices;
  std::string describe() const;
};

enum class GenericityScope {
  Local,   // coincident vertex points and degenerate triangle images
  Global,  // every collinear triple of vertex points, O(n^2 log n)
};

std::vector<GenericityViolation> genericity_check(const TetMesh& mesh,
                                                  GenericityScope scope = GenericityScope::Global);

// Name of the generator used by perturb(), recorded in output metadata.
inline constexpr const char* kPerturbationPrng = "mt19937_64/uniform53";

// Adds independent offsets drawn uniformly from (-strength, +strength) to f1
// and f2 of every vertex, in vertex order, f1 before f2. Deterministic for a
// given (mesh, seed, strength).
TetMesh perturb(const TetMesh& mesh, std::uint64_t seed, double strength);

}  // namespace reeb
