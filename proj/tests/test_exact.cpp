#include <gtest/gtest.h>

#include <random>

#include "reeb/error.hpp"
#include "reeb/exact.hpp"
#include "support.hpp"

using namespace reeb;
using namespace testing_support;

namespace {

RangeSegment seg(Point2 p, Point2 q, EdgeId id = 0) {
  RangeSegment s;
  s.edge = id;
  s.p = p;
  s.q = q;
  return s;
}

// Reference: solve p1 + s (q1 - p1) = p2 + t (q2 - p2) by Cramer's rule in mpq.
// Returns 0 for no contact, 1 for a single point (written to out), 2 for overlap.
int cramer(Point2 p1, Point2 q1, Point2 p2, Point2 q2, RationalPoint& out) {
  const Rational ax(p1.x), ay(p1.y), bx(q1.x), by(q1.y), cx(p2.x), cy(p2.y), dx(q2.x), dy(q2.y);
  const Rational ux = bx - ax, uy = by - ay, vx = dx - cx, vy = dy - cy;
  const Rational den = ux * vy - uy * vx;
  const Rational wx = cx - ax, wy = cy - ay;
  if (den == 0) {
    if (wx * uy - wy * ux != 0) return 0;
    // Collinear: project onto u.
    const Rational uu = ux * ux + uy * uy;
    Rational t0 = (wx * ux + wy * uy) / uu;
    Rational t1 = ((dx - ax) * ux + (dy - ay) * uy) / uu;
    if (t0 > t1) std::swap(t0, t1);
    const Rational lo = t0 > 0 ? t0 : Rational(0), hi = t1 < 1 ? t1 : Rational(1);
    if (lo > hi) return 0;
    if (lo < hi) return 2;
    out = {ax + lo * ux, ay + lo * uy};
    return 1;
  }
  const Rational s = (wx * vy - wy * vx) / den;
  const Rational t = (wx * uy - wy * ux) / den;
  if (s < 0 || s > 1 || t < 0 || t > 1) return 0;
  out = {ax + s * ux, ay + s * uy};
  return 1;
}

int exact_orient(Point2 p, Point2 q, Point2 r) {
  const Rational d = (Rational(q.x) - p.x) * (Rational(r.y) - p.y) - (Rational(q.y) - p.y) * (Rational(r.x) - p.x);
  return sgn(d);
}

}  // namespace

TEST(Exact, OrientExamples) {
  EXPECT_EQ(orient2d(Point2{0, 0}, Point2{1, 0}, Point2{0, 1}), 1);
  EXPECT_EQ(orient2d(Point2{0, 0}, Point2{0, 1}, Point2{1, 0}), -1);
  EXPECT_EQ(orient2d(Point2{0, 0}, Point2{1, 1}, Point2{2, 2}), 0);
  // Nearly collinear inputs that defeat naive double arithmetic.
  EXPECT_EQ(orient2d(Point2{0.5, 0.5}, Point2{12, 12}, Point2{24, 24 + 0x1p-48}), 1);
  EXPECT_EQ(orient2d(Point2{0.1, 0.1}, Point2{0.3, 0.3}, Point2{0.7, 0.7}),
            exact_orient({0.1, 0.1}, {0.3, 0.3}, {0.7, 0.7}));
}

TEST(Exact, OrientMatchesRationalReference) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int i = 0; i < 20000; ++i) {
    Point2 p, q, r;
    if (i % 2) {
      p = {u(rng), u(rng)};
      q = {u(rng), u(rng)};
      // Put r near the line pq so the filter has to fall back.
      const double t = u(rng) * 3;
      r = {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    } else {
      p = {double(small(rng)), double(small(rng))};
      q = {double(small(rng)), double(small(rng))};
      r = {double(small(rng)), double(small(rng))};
    }
    const int want = exact_orient(p, q, r);
    ASSERT_EQ(orient2d(p, q, r), want);
    ASSERT_EQ(orient2d(q, p, r), -want);
    ASSERT_EQ(orient2d(q, r, p), want);
    ASSERT_EQ(orient2d(RationalPoint(p), RationalPoint(q), RationalPoint(r)), want);
  }
}

TEST(Exact, OrientTranslationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    Point2 p{double(small(rng)), double(small(rng))}, q{double(small(rng)), double(small(rng))},
        r{double(small(rng)), double(small(rng))};
    const double dx = small(rng) * 0.25, dy = small(rng) * 0.5;
    auto sh = [&](Point2 a) { return Point2{a.x + dx, a.y + dy}; };
    ASSERT_EQ(orient2d(p, q, r), orient2d(sh(p), sh(q), sh(r)));
  }
}

TEST(Exact, CrossAndDotSigns) {
  EXPECT_EQ(cross_sign({0, 0}, {1, 0}, {5, 5}, {5, 6}), 1);
  EXPECT_EQ(cross_sign({0, 0}, {1, 0}, {5, 5}, {6, 5}), 0);
  EXPECT_EQ(dot_sign({0, 0}, {1, 0}, {5, 5}, {4, 9}), -1);
  EXPECT_EQ(dot_sign({0, 0}, {1, 0}, {5, 5}, {5, 9}), 0);
}

TEST(Exact, IntersectionExamples) {
  auto x = segment_intersection(seg({0, 0}, {2, 2}), seg({0, 2}, {2, 0}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, RationalPoint(Point2{1, 1}));

  x = segment_intersection(seg({0, 0}, {3, 0}), seg({1, 1}, {2, -2}));
  ASSERT_TRUE(x);
  EXPECT_EQ(x->x, Rational(4, 3));
  EXPECT_EQ(x->y, 0);

  EXPECT_FALSE(segment_intersection(seg({0, 0}, {1, 0}), seg({0, 1}, {1, 1})));
  EXPECT_FALSE(segment_intersection(seg({0, 0}, {1, 1}), seg({2, 0}, {3, -5})));

  // Shared endpoint.
  x = segment_intersection(seg({0, 0}, {1, 0}), seg({1, 0}, {1, 5}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, RationalPoint(Point2{1, 0}));

  // Collinear touching at one point, and collinear overlap.
  x = segment_intersection(seg({0, 0}, {1, 1}), seg({1, 1}, {3, 3}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, RationalPoint(Point2{1, 1}));
  EXPECT_THROW(segment_intersection(seg({0, 0}, {2, 2}), seg({1, 1}, {3, 3})), OverlapDegeneracy);
}

TEST(Exact, IntersectionMatchesCramer) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> small(-4, 4);
  std::uniform_real_distribution<double> u(-1, 1);
  int hits = 0, overlaps = 0;
  for (int i = 0; i < 10000; ++i) {
    Point2 a, b, c, d;
    auto pick = [&]() { return i % 3 ? Point2{double(small(rng)), double(small(rng))} : Point2{u(rng), u(rng)}; };
    do {
      a = pick();
      b = pick();
    } while (a == b);
    do {
      c = pick();
      d = pick();
    } while (c == d);
    RationalPoint want;
    const int kind = cramer(a, b, c, d, want);
    if (kind == 2) {
      ++overlaps;
      EXPECT_THROW(segment_intersection(seg(a, b), seg(c, d)), OverlapDegeneracy);
      continue;
    }
    const auto got = segment_intersection(seg(a, b), seg(c, d));
    ASSERT_EQ(got.has_value(), kind == 1) << i;
    if (got) {
      ++hits;
      ASSERT_EQ(*got, want) << i;
    }
  }
  EXPECT_GT(hits, 1000);
  EXPECT_GT(overlaps, 10);
}

TEST(Exact, CrossingParameter) {
  const RangeSegment s = seg({0, 0}, {4, 0});
  const RangeSegment t = seg({1, -1}, {1, 3});
  EXPECT_EQ(crossing_parameter(s, t), Rational(1, 4));
  EXPECT_EQ(point_at(s, Rational(1, 4)), RationalPoint(Point2{1, 0}));
}

TEST(Exact, RationalFormatting) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(to_string(Rational(-6) / 4), "-3/2");
}

TEST(Exact, SegmentFollowsVertexOrder) {
  const TetMesh m = load_t7();
  const RangeSegment s = make_segment(m, edge(m, kV2, kA), SegmentKind::Singular);
  EXPECT_EQ(s.a, kA);
  EXPECT_EQ(s.b, kV2);
  EXPECT_EQ(s.p, m.image(kA));
  EXPECT_EQ(s.q, m.image(kV2));
}

TEST(Exact, GenericityExamples) {
  EXPECT_TRUE(genericity_check(load_t7()).empty());
  EXPECT_TRUE(genericity_check(load_t7(), GenericityScope::Local).empty());

  const TetMesh coincident = single_tet({0, 0}, {1, 0}, {0, 0}, {2, 3});
  auto v = genericity_check(coincident, GenericityScope::Local);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, GenericityViolation::Kind::CoincidentVertices);
  EXPECT_EQ(v[0].vertices, (std::vector<VertexId>{0, 2}));

  const TetMesh collinear = single_tet({0, 0}, {1, 1}, {2, 2}, {0, 5});
  v = genericity_check(collinear, GenericityScope::Local);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, GenericityViolation::Kind::CollinearVertices);
  EXPECT_EQ(v[0].vertices, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(genericity_check(collinear).size(), 1u);
}

TEST(Exact, GlobalScopeMatchesBruteForce) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> small(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vertex> vs(9);
    for (auto& v : vs) {
      v.f1 = small(rng);
      v.f2 = small(rng);
    }
    // Make points distinct so collinear triples are the only violations.
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i].f1 += 5.0 * double(i);
    std::vector<std::array<VertexId, 4>> tets{{0, 1, 2, 3}, {4, 5, 6, 7}, {5, 6, 7, 8}};
    const TetMesh m = TetMesh::build(vs, tets);
    std::size_t want = 0;
    for (VertexId i = 0; i < 9; ++i)
      for (VertexId j = i + 1; j < 9; ++j)
        for (VertexId k = j + 1; k < 9; ++k) want += exact_orient(m.image(i), m.image(j), m.image(k)) == 0;
    EXPECT_EQ(genericity_check(m).size(), want);
  }
}

TEST(Exact, PerturbDeterministic) {
  const TetMesh m = load_t7();
  const TetMesh a = perturb(m, 7, 1e-3), b = perturb(m, 7, 1e-3), c = perturb(m, 8, 1e-3);
  bool differs = false;
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    EXPECT_EQ(a.image(v), b.image(v));
    differs |= !(a.image(v) == c.image(v));
    EXPECT_LT(std::abs(a.image(v).x - m.image(v).x), 1e-3);
    EXPECT_LT(std::abs(a.image(v).y - m.image(v).y), 1e-3);
    EXPECT_NE(a.image(v).x, m.image(v).x);
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(perturb(m, 1, 0.0), Error);
}

TEST(Exact, PerturbFixesDegenerateGrid) {
  GridSpec spec;
  spec.n = 3;
  const TetMesh base = generate_grid(spec);
  // Project along z: stacked vertices share an image.
  std::vector<std::array<double, 2>> f;
  for (const auto& v : base.vertices()) f.push_back({v.x, v.y});
  const TetMesh grid = base.with_fields(f);
  EXPECT_THROW(prepare_mesh(grid, 0, 0.0), Degeneracy);
  EXPECT_NO_THROW(prepare_mesh(grid, 0, 1e-4));
}
