#include <gtest/gtest.h>

#include "degtree/encompass.hpp"
#include "degtree/generators.hpp"
#include "degtree/tree_builder.hpp"
#include "degtree/verify.hpp"

using namespace degtree;

TEST(GenTight, SizesForThree) {
  const auto t = gen::gen_tight(3);
  EXPECT_EQ(t.instance.polygon.size(), 11u);
  EXPECT_EQ(reflex_count(t.instance.polygon), 3u);
  EXPECT_EQ(t.instance.a_set.size(), 8u);
  EXPECT_EQ(t.reflex.size(), 3u);
  EXPECT_EQ(t.tips.size(), 3u);
}

TEST(GenTight, SizesForOne) {
  const auto t = gen::gen_tight(1);
  EXPECT_EQ(t.instance.polygon.size(), 5u);
  EXPECT_EQ(reflex_count(t.instance.polygon), 1u);
  EXPECT_EQ(t.instance.a_set.size(), 4u);
}

TEST(GenTight, BaseVerticesLieOnTheUnitCircle) {
  const auto t = gen::gen_tight(4);
  const auto& p = t.instance.polygon;
  std::size_t on_circle = 0;
  for (const Point& v : p.vertices())
    if (v.x * v.x + v.y * v.y == 1) ++on_circle;
  // n spiked corners are replaced, n + 2 stay on the circle.
  EXPECT_EQ(on_circle, 4u + 2u);
}

TEST(GenTight, TipsSeeOnlyTheirSpike) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto t = gen::gen_tight(n);
    const auto& p = t.instance.polygon;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t tip = t.tips[k];
      for (std::size_t v = 0; v < p.size(); ++v) {
        if (v == tip) continue;
        const bool expected = v == t.reflex[k] || v == p.prev(tip);
        EXPECT_EQ(sees(p, p[tip], p[v]), expected) << "n=" << n << " tip " << tip << " v " << v;
      }
    }
  }
}

TEST(GenTight, BuiltTreeGivesEveryReflexVertexDegreeThree) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto t = gen::gen_tight(n);
    const GeomTree tree = build_tree(t.instance);
    const auto deg = tree.degrees();
    for (std::size_t r : t.reflex) EXPECT_EQ(deg[*tree.index_of(t.instance.polygon[r])], 3u) << "n=" << n;
    // Degree sum: n tips and two marks are leaves.
    std::size_t sum = 0;
    for (auto d : deg) sum += d;
    EXPECT_EQ(sum, (n + 2) + 3 * n);
  }
}

TEST(GenTight, Deterministic) {
  EXPECT_EQ(gen::gen_tight(5).instance.polygon, gen::gen_tight(5).instance.polygon);
}

TEST(GenRandomPolygon, SimpleAndDeterministic) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto a = gen::gen_random_polygon(5 + seed, seed);
    const auto b = gen::gen_random_polygon(5 + seed, seed);
    EXPECT_EQ(a.polygon, b.polygon);
    EXPECT_EQ(a.a_set, b.a_set);
    EXPECT_EQ(a.v1, b.v1);
    EXPECT_TRUE(is_simple(a.polygon.vertices()));
    EXPECT_EQ(a.polygon.size(), 5 + seed);
    EXPECT_NO_THROW(validate_instance(a));
    for (std::size_t r : classify_vertices(a.polygon).reflex)
      EXPECT_TRUE(std::binary_search(a.a_set.begin(), a.a_set.end(), r));
  }
  EXPECT_NE(gen::gen_random_polygon(12, 1).polygon, gen::gen_random_polygon(12, 2).polygon);
}

TEST(GenRandomPolygon, RejectsTinyN) { EXPECT_THROW(gen::gen_random_polygon(2, 1), Error); }

TEST(GenRandomSegments, GeneralPositionAndDisjoint) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = gen::gen_random_segments(15, seed);
    ASSERT_EQ(s.size(), 15u);
    std::vector<Point> pts;
    for (const auto& seg : s) {
      pts.push_back(seg.p);
      pts.push_back(seg.q);
    }
    // Exhaustive triple check, written out here rather than reusing the helper.
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (std::size_t k = j + 1; k < pts.size(); ++k)
          ASSERT_NE(cross(pts[j] - pts[i], pts[k] - pts[i]), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        EXPECT_FALSE(segments_intersect(s[i], s[j], IntersectMode::Any));
    EXPECT_NO_THROW(validate_segments(s));
  }
}

TEST(GenRandomSegments, Deterministic) {
  EXPECT_EQ(gen::gen_random_segments(10, 9), gen::gen_random_segments(10, 9));
  EXPECT_NE(gen::gen_random_segments(10, 9), gen::gen_random_segments(10, 10));
}
