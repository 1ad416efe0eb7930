#include "reeb/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "reeb/error.hpp"

namespace reeb {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::size_t RationalPointHash::operator()(const RationalPoint& p) const {
  // Canonical form is unique, so equal points round to equal doubles.
  std::size_t h1 = std::hash<double>{}(p.x.get_d());
  std::size_t h2 = std::hash<double>{}(p.y.get_d());
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

int orient2d(const RationalPoint& p, const RationalPoint& q, const RationalPoint& r) {
  Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(det);
}

namespace {

// Relative error bound of the double evaluation of (a - b)(c - d) -/+ (e - f)(g - h),
// as derived by Shewchuk for orient2d.
constexpr double kEps = 0x1p-53;
constexpr double kErrBound = (3.0 + 16.0 * kEps) * kEps;

int exact_cross(Point2 a, Point2 b, Point2 c, Point2 d, bool dot) {
  Rational ux = Rational(b.x) - Rational(a.x);
  Rational uy = Rational(b.y) - Rational(a.y);
  Rational vx = Rational(d.x) - Rational(c.x);
  Rational vy = Rational(d.y) - Rational(c.y);
  Rational r = dot ? Rational(ux * vx + uy * vy) : Rational(ux * vy - uy * vx);
  return sgn(r);
}

}  // namespace

int cross_sign(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double l = (b.x - a.x) * (d.y - c.y);
  const double r = (b.y - a.y) * (d.x - c.x);
  const double det = l - r;
  const double bound = kErrBound * (std::abs(l) + std::abs(r));
  if (bound > 1e-280) {
    if (det > bound) return 1;
    if (-det > bound) return -1;
  }
  return exact_cross(a, b, c, d, false);
}

int dot_sign(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double l = (b.x - a.x) * (d.x - c.x);
  const double r = (b.y - a.y) * (d.y - c.y);
  const double s = l + r;
  const double bound = kErrBound * (std::abs(l) + std::abs(r));
  if (bound > 1e-280) {
    if (s > bound) return 1;
    if (-s > bound) return -1;
  }
  return exact_cross(a, b, c, d, true);
}

int orient2d(Point2 p, Point2 q, Point2 r) { return cross_sign(p, q, p, r); }

const char* to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::Regular: return "regular";
    case SegmentKind::Singular: return "singular";
    case SegmentKind::PseudoSingular: return "pseudo-singular";
  }
  return "?";
}

RangeSegment make_segment(const TetMesh& mesh, EdgeId e, SegmentKind kind) {
  const auto& ed = mesh.edges()[e];
  RangeSegment s;
  s.edge = e;
  s.a = ed[0];
  s.b = ed[1];
  s.p = mesh.image(ed[0]);
  s.q = mesh.image(ed[1]);
  s.kind = kind;
  return s;
}

Rational crossing_parameter(const RangeSegment& s, const RangeSegment& other) {
  // s.p + t (s.q - s.p) lies on the line through other: cross(o.q - o.p, x - o.p) = 0.
  Rational sx = Rational(s.q.x) - s.p.x, sy = Rational(s.q.y) - s.p.y;
  Rational ox = Rational(other.q.x) - other.p.x, oy = Rational(other.q.y) - other.p.y;
  Rational wx = Rational(other.p.x) - s.p.x, wy = Rational(other.p.y) - s.p.y;
  Rational den = sx * oy - sy * ox;
  Rational num = wx * oy - wy * ox;
  return num / den;
}

RationalPoint point_at(const RangeSegment& s, const Rational& t) {
  if (t == 0) return s.exact_p();
  if (t == 1) return s.exact_q();
  Rational x = Rational(s.p.x) + t * (Rational(s.q.x) - s.p.x);
  Rational y = Rational(s.p.y) + t * (Rational(s.q.y) - s.p.y);
  return {x, y};
}

std::optional<RationalPoint> segment_intersection(const RangeSegment& s1, const RangeSegment& s2) {
  const int o1 = orient2d(s1.p, s1.q, s2.p);
  const int o2 = orient2d(s1.p, s1.q, s2.q);
  if (o1 == 0 && o2 == 0) {
    // Collinear: compare projections on the dominant axis.
    const bool use_x = s1.p.x != s1.q.x;
    auto key = [&](Point2 p) { return use_x ? p.x : p.y; };
    double a0 = key(s1.p), a1 = key(s1.q), b0 = key(s2.p), b1 = key(s2.q);
    if (a0 > a1) std::swap(a0, a1);
    if (b0 > b1) std::swap(b0, b1);
    const double lo = std::max(a0, b0), hi = std::min(a1, b1);
    if (lo > hi) return std::nullopt;
    if (lo < hi) {
      throw OverlapDegeneracy("segments of edges " + std::to_string(s1.edge) + " and " + std::to_string(s2.edge) +
                              " overlap");
    }
    for (Point2 p : {s1.p, s1.q})
      if (key(p) == lo) return RationalPoint(p);
    return std::nullopt;
  }
  if (o1 * o2 > 0) return std::nullopt;
  const int o3 = orient2d(s2.p, s2.q, s1.p);
  const int o4 = orient2d(s2.p, s2.q, s1.q);
  if (o3 * o4 > 0) return std::nullopt;
  if (o1 == 0) return RationalPoint(s2.p);
  if (o2 == 0) return RationalPoint(s2.q);
  if (o3 == 0) return RationalPoint(s1.p);
  if (o4 == 0) return RationalPoint(s1.q);
  return point_at(s1, crossing_parameter(s1, s2));
}

std::string GenericityViolation::describe() const {
  std::string s;
  switch (kind) {
    case Kind::CoincidentVertices: s = "coincident vertex points"; break;
    case Kind::CollinearVertices: s = "collinear vertex points"; break;
    case Kind::TripleIntersection: s = "three segments through one point"; break;
  }
  s += " {";
  for (std::size_t i = 0; i < vertices.size(); ++i) s += (i ? "," : "") + std::to_string(vertices[i]);
  return s + "}";
}

std::vector<GenericityViolation> genericity_check(const TetMesh& mesh, GenericityScope scope) {
  using Kind = GenericityViolation::Kind;
  std::vector<GenericityViolation> out;
  const auto n = static_cast<VertexId>(mesh.num_vertices());

  // Coincident points. Adding 0.0 folds -0.0 into +0.0.
  std::map<std::pair<double, double>, std::vector<VertexId>> by_point;
  for (VertexId v = 0; v < n; ++v) {
    Point2 p = mesh.image(v);
    by_point[{p.x + 0.0, p.y + 0.0}].push_back(v);
  }
  for (auto& [pt, vs] : by_point)
    if (vs.size() > 1) out.push_back({Kind::CoincidentVertices, vs});

  if (scope == GenericityScope::Local) {
    for (TriId t = 0; t < mesh.num_triangles(); ++t) {
      const auto& tri = mesh.triangles()[t];
      if (orient2d(mesh.image(tri[0]), mesh.image(tri[1]), mesh.image(tri[2])) == 0) {
        out.push_back({Kind::CollinearVertices, {tri[0], tri[1], tri[2]}});
      }
    }
    return out;
  }

  // For each vertex p, sort the directions to higher-indexed vertices modulo
  // pi; equal directions mean a collinear triple with p as smallest index.
  struct Dir {
    Point2 from, to;
    VertexId v;
  };
  std::vector<Dir> dirs;
  for (VertexId i = 0; i < n; ++i) {
    const Point2 p = mesh.image(i);
    dirs.clear();
    for (VertexId j = i + 1; j < n; ++j) {
      const Point2 q = mesh.image(j);
      if (p == q) continue;
      const bool upper = q.y > p.y || (q.y == p.y && q.x > p.x);
      dirs.push_back(upper ? Dir{p, q, j} : Dir{q, p, j});
    }
    std::sort(dirs.begin(), dirs.end(), [](const Dir& a, const Dir& b) {
      int c = cross_sign(a.from, a.to, b.from, b.to);
      return c != 0 ? c > 0 : a.v < b.v;
    });
    for (std::size_t a = 0; a < dirs.size();) {
      std::size_t b = a + 1;
      while (b < dirs.size() && cross_sign(dirs[a].from, dirs[a].to, dirs[b].from, dirs[b].to) == 0) ++b;
      for (std::size_t x = a; x < b; ++x)
        for (std::size_t y = x + 1; y < b; ++y) {
          VertexId u = std::min(dirs[x].v, dirs[y].v), w = std::max(dirs[x].v, dirs[y].v);
          out.push_back({Kind::CollinearVertices, {i, u, w}});
        }
      a = b;
    }
  }
  return out;
}

TetMesh perturb(const TetMesh& mesh, std::uint64_t seed, double strength) {
  if (!(strength > 0)) throw Error("perturbation strength must be positive");
  std::mt19937_64 rng(seed);
  auto offset = [&]() {
    std::uint64_t bits;
    do {
      bits = rng() >> 11;
    } while (bits == 0);
    const double u = static_cast<double>(bits) * 0x1p-53;  // (0, 1)
    return strength * (2.0 * u - 1.0);
  };
  std::vector<std::array<double, 2>> fields(mesh.num_vertices());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto& v = mesh.vertices()[i];
    fields[i][0] = v.f1 + offset();
    fields[i][1] = v.f2 + offset();
  }
  return mesh.with_fields(fields);
}

}  // namespace reeb
