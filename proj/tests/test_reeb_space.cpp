#include <gtest/gtest.h>

#include <numeric>

#include "reeb/oracle.hpp"
#include "support.hpp"

using namespace reeb;
using namespace testing_support;

namespace {

using json = nlohmann::ordered_json;

Rational parse_rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

Rational total_area(const ReebSpaceResult& r) {
  Rational sum = 0;
  for (const auto& s : r.sheets) sum += s.area;
  return sum;
}

// Twice the area of the convex hull of pts (gift wrapping), exact.
Rational hull_area(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  std::vector<Point2> h;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = h.size();
    for (const Point2& p : pts) {
      while (h.size() >= base + 2 && orient2d(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  Rational twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point2 a = h[i], b = h[(i + 1) % h.size()];
    twice += Rational(a.x) * b.y - Rational(b.x) * a.y;
  }
  return twice / 2;
}

TetMesh scaled(const TetMesh& m, double k) {
  std::vector<std::array<double, 2>> f;
  for (const auto& v : m.vertices()) f.push_back({v.f1 * k, v.f2 * k});
  return m.with_fields(f);
}

}  // namespace

TEST(ReebSpace, FanMeshSheets) {
  const ReebSpaceResult r = compute(load_t7(), {});
  ASSERT_EQ(r.sheets.size(), 3u);
  EXPECT_EQ(r.graph_components, 3u);
  EXPECT_EQ(r.graph_vertices, 5u);
  // The two sheets born at av1 and bv5 share the face beyond ab and meet the
  // third along ab.
  std::size_t shared = 0;
  for (const auto& s : r.sheets) shared += s.faces.size() == 2;
  EXPECT_EQ(shared, 2u);
  for (const auto& s : r.sheets) EXPECT_EQ(s.adjacent.size(), 2u);
}

TEST(ReebSpace, AreaConservation) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const TetMesh m = random_grid(seed, 3, 0.2);
    ComputeOptions o;
    const ReebSpaceResult s = compute(m, o);
    o.algorithm = Algorithm::Full;
    const ReebSpaceResult f = compute(m, o);
    EXPECT_EQ(total_area(s), total_area(f));
    EXPECT_EQ(sheet_areas(s), sheet_areas(f));
    for (const auto& sheet : s.sheets) {
      Rational sum = 0;
      for (const auto& face : sheet.faces) sum += face.area * face.multiplicity;
      EXPECT_EQ(sum, sheet.area);
      EXPECT_GT(sheet.area, 0);
    }
  }
}

TEST(ReebSpace, SingleTetAreaIsHullArea) {
  const std::vector<Point2> pts{{0, 0}, {5, 1}, {1, 4}, {2, 2}};
  const ReebSpaceResult r = compute(single_tet(pts[0], pts[1], pts[2], pts[3]), {});
  ASSERT_EQ(r.sheets.size(), 1u);
  EXPECT_EQ(r.sheets[0].area, hull_area(pts));
  const std::vector<Point2> convex{{0, 0}, {5, 1}, {4, 5}, {1, 4}};
  EXPECT_EQ(compute(single_tet(convex[0], convex[1], convex[2], convex[3]), {}).sheets[0].area, hull_area(convex));
}

TEST(ReebSpace, PowerOfTwoScaling) {
  const TetMesh m = random_grid(6, 3, 0.2);
  const ReebSpaceResult a = compute(m, {});
  const ReebSpaceResult b = compute(scaled(m, 4.0), {});
  ASSERT_EQ(a.sheets.size(), b.sheets.size());
  auto sa = sheet_areas(a), sb = sheet_areas(b);
  for (auto& x : sa) x *= 16;
  EXPECT_EQ(sa, sb);
  const ReebSpaceResult c = compute(scaled(m, 0.5), {});
  auto sc = sheet_areas(c);
  for (auto& x : sc) x *= 4;
  EXPECT_EQ(sheet_areas(a), sc);
}

TEST(ReebSpace, AdjacencyIsSymmetric) {
  const ReebSpaceResult r = compute(random_grid(2, 3, 0.3, "saddle"), {});
  for (const auto& s : r.sheets) {
    EXPECT_TRUE(std::is_sorted(s.adjacent.begin(), s.adjacent.end()));
    for (auto o : s.adjacent) {
      ASSERT_LT(o, r.sheets.size());
      EXPECT_NE(o, s.id);
      const auto& back = r.sheets[o].adjacent;
      EXPECT_TRUE(std::find(back.begin(), back.end(), s.id) != back.end());
    }
  }
}

TEST(ReebSpace, JsonRoundTrip) {
  const ReebSpaceResult r = compute(load_t7(), {});
  const json doc = serialize(r);
  const json back = json::parse(doc.dump());
  EXPECT_EQ(back, doc);
  EXPECT_EQ(back["format"], "reeb-space/1");
  EXPECT_EQ(back["algorithm"], "singular");
  EXPECT_EQ(back["sheet_count"], 3);
  ASSERT_EQ(back["sheets"].size(), 3u);
  Rational sum = 0;
  for (std::size_t i = 0; i < r.sheets.size(); ++i) {
    const auto& js = back["sheets"][i];
    EXPECT_EQ(js["id"], r.sheets[i].id);
    EXPECT_EQ(parse_rational(js["area"]), r.sheets[i].area);
    sum += parse_rational(js["area"]);
    Rational faces = 0;
    for (const auto& f : js["faces"]) {
      faces += parse_rational(f["area"]) * f["multiplicity"].get<int>();
      EXPECT_GE(f["polygon"].size(), 3u);
    }
    EXPECT_EQ(faces, r.sheets[i].area);
  }
  EXPECT_EQ(sum, total_area(r));
  EXPECT_FALSE(doc["stats"].contains("timings_s"));
  EXPECT_FALSE(doc["stats"].contains("peak_memory_kb"));
  EXPECT_EQ(back["correspondence_graph"]["components"], 3);
}

TEST(ReebSpace, EmptyResult) {
  ReebSpaceResult r;
  r.algorithm = "singular";
  const json doc = serialize(r);
  EXPECT_EQ(doc["sheet_count"], 0);
  EXPECT_TRUE(doc["sheets"].empty());
  EXPECT_TRUE(sheet_areas(r).empty());
}

TEST(ReebSpace, PolygonsOptional) {
  ComputeOptions o;
  o.with_polygons = false;
  const ReebSpaceResult r = compute(load_t7(), o);
  for (const auto& s : r.sheets)
    for (const auto& f : s.faces) EXPECT_TRUE(f.polygon.empty());
  EXPECT_EQ(r.sheets.size(), 3u);
}

TEST(ReebSpace, StatsJson) {
  const ReebSpaceResult r = compute(load_t7(), {});
  const json quiet = stats_to_json(r.stats, false);
  const json loud = stats_to_json(r.stats, true);
  EXPECT_EQ(quiet["N_s"], 9);
  EXPECT_EQ(quiet["k_s"], 1);
  EXPECT_EQ(quiet["k_r"], 4);
  EXPECT_FALSE(quiet.contains("timings_s"));
  ASSERT_TRUE(loud.contains("timings_s"));
  EXPECT_TRUE(loud["timings_s"].contains("total"));
}
