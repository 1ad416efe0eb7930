#include <gtest/gtest.h>

#include <algorithm>
#include <queue>
#include <random>

#include "reeb/error.hpp"
#include "reeb/jacobi.hpp"
#include "support.hpp"

using namespace reeb;
using namespace testing_support;

namespace {

// Andrew's monotone chain; returns hull vertex indices counterclockwise.
std::vector<int> hull(const std::vector<Point2>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
  });
  std::vector<int> h(2 * idx.size());
  std::size_t k = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = k;
    for (int i : idx) {
      while (k >= base + 2 && orient2d(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
      h[k++] = i;
    }
    --k;
    std::reverse(idx.begin(), idx.end());
  }
  h.resize(k);
  return h;
}

// Connected components of the link restricted to one side, by BFS.
std::uint32_t side_components(const TetMesh& m, EdgeId e, int side) {
  const EdgeLink link = edge_link(m, e);
  const auto [a, b] = m.edges()[e];
  auto on_side = [&](VertexId v) { return orient2d(m.image(a), m.image(b), m.image(v)) == side; };
  std::vector<VertexId> vs;
  for (VertexId v : link.vertices)
    if (on_side(v)) vs.push_back(v);
  std::vector<bool> done(vs.size(), false);
  std::uint32_t comps = 0;
  for (std::size_t s = 0; s < vs.size(); ++s) {
    if (done[s]) continue;
    ++comps;
    std::queue<std::size_t> q;
    q.push(s);
    done[s] = true;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop();
      for (const auto& le : link.edges) {
        VertexId other = kNone;
        if (le[0] == vs[i]) other = le[1];
        if (le[1] == vs[i]) other = le[0];
        if (other == kNone || !on_side(other)) continue;
        const auto j = std::find(vs.begin(), vs.end(), other) - vs.begin();
        if (!done[j]) {
          done[j] = true;
          q.push(j);
        }
      }
    }
  }
  return comps;
}

}  // namespace

TEST(Jacobi, LoneTetLinkSplit) {
  // c = (0,1) above ab, d = (1,-1) below.
  const TetMesh m = single_tet({0, 0}, {2, 0}, {0, 1}, {1, -1});
  const LinkPartition p = split_link(m, edge(m, 0, 1));
  EXPECT_EQ(p.upper, (std::vector<VertexId>{2}));
  EXPECT_EQ(p.lower, (std::vector<VertexId>{3}));
  EXPECT_EQ(p.upper_components, 1u);
  EXPECT_EQ(p.lower_components, 1u);
  EXPECT_TRUE(p.upper_edges.empty());
  EXPECT_EQ(classify(p).type, EdgeType::Regular);

  const LinkPartition q = split_link(m, edge(m, 0, 2));
  EXPECT_EQ(q.upper_components + q.lower_components, 1u);
  EXPECT_EQ(q.upper_edges.size() + q.lower_edges.size(), 1u);
  EXPECT_EQ(classify(q).type, EdgeType::Definite);
}

TEST(Jacobi, LoneTetSingularEdgesAreHullEdges) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point2> pts(4);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const TetMesh m = single_tet(pts[0], pts[1], pts[2], pts[3]);
    const auto h = hull(pts);
    auto on_hull = [&](int a, int b) {
      for (std::size_t i = 0; i < h.size(); ++i) {
        const int x = h[i], y = h[(i + 1) % h.size()];
        if ((x == a && y == b) || (x == b && y == a)) return true;
      }
      return false;
    };
    const Classification c = classify_all(m);
    std::size_t singular = 0;
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
      const auto [a, b] = m.edges()[e];
      const EdgeClass& k = c.classes[e];
      ASSERT_NE(k.type, EdgeType::Indefinite);
      ASSERT_EQ(k.singular(), on_hull(int(a), int(b))) << trial << " edge " << a << b;
      singular += k.singular();
    }
    EXPECT_EQ(singular, h.size());
    EXPECT_EQ(c.singular.singular_edges.size(), h.size());
    EXPECT_EQ(c.singular.singular_vertices.size(), h.size());
  }
}

TEST(Jacobi, FanMeshClassification) {
  const TetMesh m = load_t7();
  const Classification c = classify_all(m);
  const EdgeClass ab = c.classes[edge(m, kA, kB)];
  EXPECT_EQ(ab.type, EdgeType::Indefinite);
  EXPECT_EQ(ab.upper_components, 2u);
  EXPECT_EQ(ab.lower_components, 1u);
  EXPECT_TRUE(ab.simple());
  EXPECT_EQ(c.classes[edge(m, kA, kV1)].type, EdgeType::Definite);
  EXPECT_EQ(c.classes[edge(m, kB, kV5)].type, EdgeType::Definite);
  EXPECT_EQ(c.classes[edge(m, kV1, kV2)].type, EdgeType::Regular);
  EXPECT_EQ(c.classes[edge(m, kV4, kV5)].type, EdgeType::Regular);
  EXPECT_EQ(c.singular.singular_edges.size(), 9u);
  std::size_t definite = 0, indefinite = 0;
  for (const auto& k : c.classes) {
    definite += k.type == EdgeType::Definite;
    indefinite += k.type == EdgeType::Indefinite;
  }
  EXPECT_EQ(definite, 8u);
  EXPECT_EQ(indefinite, 1u);
  EXPECT_TRUE(c.singular.pseudo_edges.empty());
  EXPECT_EQ(to_string(EdgeType::Indefinite), std::string("indefinite"));
}

TEST(Jacobi, ComponentsMatchIndependentCount) {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const TetMesh m = random_grid(seed, 3, 0.3, "saddle");
    const Classification c = classify_all(m);
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
      ASSERT_EQ(c.classes[e].upper_components, side_components(m, e, 1));
      ASSERT_EQ(c.classes[e].lower_components, side_components(m, e, -1));
      const auto up = c.links.upper(e), lo = c.links.lower(e);
      ASSERT_EQ(up.size() + lo.size(), edge_degree(m, e));
    }
  }
}

TEST(Jacobi, TypesInvariantUnderFieldSwap) {
  const TetMesh m = random_grid(12, 3, 0.3, "saddle");
  std::vector<std::array<double, 2>> swapped;
  for (const auto& v : m.vertices()) swapped.push_back({v.f2, v.f1});
  const TetMesh s = m.with_fields(swapped);
  const Classification a = classify_all(m), b = classify_all(s);
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    EXPECT_EQ(a.classes[e].type, b.classes[e].type);
    EXPECT_EQ(a.classes[e].upper_components, b.classes[e].lower_components);
    EXPECT_EQ(a.classes[e].lower_components, b.classes[e].upper_components);
  }
  EXPECT_EQ(a.singular.singular_edges, b.singular.singular_edges);
}

TEST(Jacobi, TypesInvariantUnderRelabeling) {
  const TetMesh m = random_grid(21, 3, 0.3, "saddle");
  const auto n = static_cast<VertexId>(m.num_vertices());
  std::vector<Vertex> vs(m.vertices().rbegin(), m.vertices().rend());
  std::vector<std::array<VertexId, 4>> tets;
  for (auto t : m.tets()) {
    for (auto& v : t) v = n - 1 - v;
    tets.push_back(t);
  }
  const TetMesh r = TetMesh::build(vs, tets);
  const Classification a = classify_all(m), b = classify_all(r);
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    const auto [u, v] = m.edges()[e];
    const EdgeId f = edge(r, n - 1 - u, n - 1 - v);
    EXPECT_EQ(a.classes[e].type, b.classes[f].type);
    // Reversing a < b flips upper and lower.
    EXPECT_EQ(a.classes[e].upper_components, b.classes[f].lower_components);
  }
}

TEST(Jacobi, CollinearLinkVertexThrows) {
  const TetMesh m = single_tet({0, 0}, {2, 0}, {1, 0}, {1, 1});
  EXPECT_THROW(classify_all(m), DegenerateOrientation);
}

TEST(Jacobi, SegmentsListSingularThenPseudo) {
  const TetMesh m = load_t7();
  SingularSet s = classify_all(m).singular;
  s.pseudo_edges = {edge(m, kV1, kV2)};
  const auto segs = s.segments(m);
  ASSERT_EQ(segs.size(), 10u);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(segs[i].kind, SegmentKind::Singular);
  EXPECT_EQ(segs[9].kind, SegmentKind::PseudoSingular);
  EXPECT_TRUE(s.contains(edge(m, kV1, kV2)));
  EXPECT_TRUE(s.contains(edge(m, kA, kB)));
  EXPECT_FALSE(s.contains(edge(m, kV4, kV5)));
}

TEST(Jacobi, ConnectNothingToDoOnFanMesh) {
  const TetMesh m = load_t7();
  const ConnectResult r = connect_nested(m, classify_all(m).singular);
  EXPECT_EQ(r.added, 0u);
  EXPECT_EQ(r.arrangement.num_faces(), 5u);
}

TEST(Jacobi, ConnectRemovesHoles) {
  const TetMesh m = random_grid(1, 3, 0.05);
  const Classification c = classify_all(m);
  const auto plain = build_arrangement(c.singular.segments(m));
  std::size_t holes_before = 0;
  for (FaceId f = 1; f < plain.num_faces(); ++f) holes_before += plain.faces()[f].holes.size();
  EXPECT_GT(holes_before, 0u);

  const ConnectResult r = connect_nested(m, c.singular);
  EXPECT_GT(r.added, 0u);
  EXPECT_EQ(r.set.pseudo_edges.size(), r.added);
  for (EdgeId e : r.set.pseudo_edges) {
    EXPECT_FALSE(std::binary_search(c.singular.singular_edges.begin(), c.singular.singular_edges.end(), e));
    EXPECT_FALSE(c.classes[e].singular());
  }
  for (FaceId f = 1; f < r.arrangement.num_faces(); ++f) EXPECT_TRUE(r.arrangement.faces()[f].holes.empty()) << f;
  // Connectors only split faces: total bounded area is preserved.
  Rational before = 0, after = 0;
  for (FaceId f = 1; f < plain.num_faces(); ++f) before += plain.face_area(f);
  for (FaceId f = 1; f < r.arrangement.num_faces(); ++f) after += r.arrangement.face_area(f);
  EXPECT_LE(before, after);
}

TEST(Jacobi, ConnectLeavesHoleFreeArrangementsAlone) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const TetMesh m = random_grid(seed, 3, 0.05);
    const ConnectResult r = connect_nested(m, classify_all(m).singular);
    for (FaceId f = 1; f < r.arrangement.num_faces(); ++f) ASSERT_TRUE(r.arrangement.faces()[f].holes.empty());
    EXPECT_TRUE(r.arrangement.euler_holds());
  }
}
