#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "reeb/jacobi.hpp"
#include "reeb/red_blue.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace reeb;
using namespace testing_support;

namespace {

void check_lists(const Built& b, const std::vector<RangeSegment>& blue, const std::vector<RangeSegment>& red) {
  EXPECT_EQ(lists_problem(b, blue, red), "");
}

}  // namespace

TEST(RedBlue, SquareExamples) {
  const std::vector<Point2> pool{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, -1}, {2, 5}, {6, 2}};
  std::vector<RangeSegment> blue{seg(pool, 0, 1, 0, SegmentKind::Singular), seg(pool, 1, 2, 1, SegmentKind::Singular),
                                 seg(pool, 2, 3, 2, SegmentKind::Singular), seg(pool, 0, 3, 3, SegmentKind::Singular)};
  // One red crosses the square vertically, one leaves a corner outward.
  std::vector<RangeSegment> red{seg(pool, 4, 5, 4, SegmentKind::Regular), seg(pool, 2, 6, 5, SegmentKind::Regular)};
  const Built b = build(blue, red);
  ASSERT_EQ(b.crossings.size(), 3u);
  EXPECT_EQ(proper_crossing_count(b.crossings), 2u);
  const auto& inner = b.lists[1];
  ASSERT_EQ(inner.entries.size(), 2u);
  EXPECT_NE(inner.entries[0].to_upper, inner.entries[1].to_upper);
  EXPECT_EQ(b.lists[0].entries.size(), 3u);
  check_lists(b, blue, red);
}

TEST(RedBlue, FaceWithoutCrossings) {
  const std::vector<Point2> pool{{0, 0}, {4, 0}, {0, 4}};
  std::vector<RangeSegment> blue{seg(pool, 0, 1, 0, SegmentKind::Singular), seg(pool, 1, 2, 1, SegmentKind::Singular),
                                 seg(pool, 0, 2, 2, SegmentKind::Singular)};
  const Built b = build(blue, {});
  const auto d = essential_descriptors(b.lists[1]);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first, kNone);
}

TEST(RedBlue, RandomAgainstAllPairs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 600; ++trial) {
    const Instance in = random_instance(rng, 5 + trial % 8, 1 + trial % 15, 1 + (trial * 7) % 15);
    const PlanarArrangement arr = build_arrangement(in.blue);
    ASSERT_EQ(red_blue_problem(in, arr, red_blue(arr, in.red)), "") << "trial " << trial;
  }
}

TEST(RedBlue, ListsMatchWalkInFullArrangement) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance in = random_instance(rng, 5 + trial % 7, 2 + trial % 10, 1 + trial % 12);
    const Built b = build(in.blue, in.red);
    check_lists(b, in.blue, in.red);
    if (HasFailure()) FAIL() << "trial " << trial;
  }
}

TEST(RedBlue, MeshInstances) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const TetMesh m = random_grid(seed, 3, 0.2);
    const Classification c = classify_all(m);
    const ConnectResult cr = connect_nested(m, c.singular);
    std::vector<RangeSegment> red;
    for (EdgeId e = 0; e < m.num_edges(); ++e)
      if (!cr.set.contains(e)) red.push_back(make_segment(m, e, SegmentKind::Regular));
    const Built b = build(cr.set.segments(m), red);
    check_lists(b, cr.set.segments(m), red);
  }
}

TEST(RedBlue, FanMeshLists) {
  const TetMesh m = load_t7();
  const Classification c = classify_all(m);
  std::vector<RangeSegment> red;
  for (EdgeId e = 0; e < m.num_edges(); ++e)
    if (!c.singular.contains(e)) red.push_back(make_segment(m, e, SegmentKind::Regular));
  ASSERT_EQ(red.size(), 6u);
  const Built b = build(c.singular.segments(m), red);
  EXPECT_EQ(proper_crossing_count(b.crossings), 4u);
  check_lists(b, c.singular.segments(m), red);

  const EdgeId v12 = edge(m, kV1, kV2), v45 = edge(m, kV4, kV5);
  std::size_t matches = 0;
  for (const auto& L : b.lists) {
    std::multiset<EdgeId> q;
    for (const QEntry& e : L.entries) q.insert(red[b.crossings[e.crossing].red].edge);
    if (q == std::multiset<EdgeId>{v12, v12, v45, v45}) ++matches;
  }
  EXPECT_EQ(matches, 1u);
}
