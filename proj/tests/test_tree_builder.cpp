#include <gtest/gtest.h>

#include "degtree/generators.hpp"
#include "degtree/tree_builder.hpp"
#include "degtree/verify.hpp"
#include "test_support.hpp"

using namespace degtree;
using degtree::testing::all_indices;
using degtree::testing::l_polygon;
using degtree::testing::unit_square;

namespace {

MarkedInstance instance(Polygon p, std::vector<std::size_t> a, std::optional<std::size_t> v1 = {},
                        std::optional<std::size_t> v2 = {}) {
  MarkedInstance inst;
  inst.polygon = std::move(p);
  inst.a_set = std::move(a);
  inst.v1 = v1;
  inst.v2 = v2;
  return inst;
}

std::vector<Point> mark_points(const MarkedInstance& inst) {
  std::vector<Point> m;
  for (std::size_t v : inst.marks()) m.push_back(inst.polygon[v]);
  return m;
}

void expect_valid(const MarkedInstance& inst, const GeomTree& t) {
  auto rep = verify::check_tree(t);
  rep.merge(verify::check_inscribed(t, inst.polygon));
  const auto marks = mark_points(inst);
  rep.merge(verify::check_degrees(t, inst.polygon, marks));
  EXPECT_TRUE(rep.ok()) << rep.failures();
  EXPECT_EQ(t.points.size(), inst.a_set.size());
  EXPECT_EQ(t.edges.size() + 1, inst.a_set.size());
  std::size_t degree_sum = 0;
  for (auto d : t.degrees()) degree_sum += d;
  EXPECT_EQ(degree_sum, 2 * (inst.a_set.size() - 1));
}

// Polygon with two reflex vertices: a "W" shape.
Polygon w_polygon() { return Polygon({{0, 0}, {6, 0}, {6, 4}, {4, 1}, {3, 4}, {2, 1}, {0, 4}}); }

}  // namespace

TEST(SelectDefaultMarks, SquareUsesLexExtremes) {
  auto inst = select_default_marks(instance(unit_square(), all_indices(unit_square())));
  EXPECT_EQ(inst.v1, 0u);  // (0,0)
  EXPECT_EQ(inst.v2, 2u);  // (1,1)
  EXPECT_TRUE(inst.removable.empty());
}

TEST(SelectDefaultMarks, TwoConvexMembersAreForced) {
  // L-polygon with A = {reflex (1,1), (2,0), (0,2)}.
  auto inst = select_default_marks(instance(l_polygon(), {1, 3, 5}));
  EXPECT_EQ(inst.v1, 5u);  // (0,2) < (2,0) lexicographically
  EXPECT_EQ(inst.v2, 1u);
}

TEST(SelectDefaultMarks, ReflexOnlyAddsRemovableExtremes) {
  const Polygon w = w_polygon();
  ASSERT_EQ(classify_vertices(w).reflex, (std::vector<std::size_t>{3, 5}));
  auto inst = select_default_marks(instance(w, {3, 5}));
  EXPECT_EQ(inst.v1, 0u);  // (0,0)
  EXPECT_EQ(inst.v2, 2u);  // (6,4)
  EXPECT_EQ(inst.a_set, (std::vector<std::size_t>{0, 2, 3, 5}));
  EXPECT_EQ(inst.removable, (std::vector<std::size_t>{0, 2}));
  const GeomTree t = build_tree(inst);
  expect_valid(inst, t);
  // Both added vertices are leaves and can be dropped.
  const auto deg = t.degrees();
  EXPECT_EQ(deg[0], 1u);
  EXPECT_EQ(deg[1], 1u);
  const GeomTree trimmed = remove_vertices(t, {0, 1});
  EXPECT_TRUE(verify::check_tree(trimmed).ok());
  EXPECT_EQ(trimmed.points.size(), 2u);
}

TEST(SelectDefaultMarks, TooFewVertices) {
  try {
    select_default_marks(instance(l_polygon(), {3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewVertices);
  }
}

TEST(ValidateInstance, RejectsBadInstances) {
  EXPECT_THROW(validate_instance(instance(l_polygon(), {0, 1})), Error);          // reflex 3 missing
  EXPECT_THROW(validate_instance(instance(l_polygon(), {0, 3}, 0, 3)), Error);    // reflex mark
  EXPECT_THROW(validate_instance(instance(l_polygon(), {0, 3, 4}, 0, 1)), Error); // mark not in A
  EXPECT_THROW(validate_instance(instance(l_polygon(), {0, 3, 9})), Error);       // out of range
  EXPECT_NO_THROW(validate_instance(instance(l_polygon(), {0, 3, 4}, 0, 4)));
}

TEST(ConvexPath, SquareExample) {
  const auto inst = instance(unit_square(), all_indices(unit_square()), 0, 2);
  const GeomTree t = build_convex_path(inst);
  // Path p0-p1-p3-p2.
  EXPECT_EQ(t.edges, (std::vector<Edge>{{0, 1}, {1, 3}, {2, 3}}));
  expect_valid(inst, t);
}

TEST(ConvexPath, TwoVerticesGiveOneEdge) {
  const auto inst = instance(unit_square(), {1, 3}, 1, 3);
  const GeomTree t = build_convex_path(inst);
  EXPECT_EQ(t.edges, (std::vector<Edge>{{0, 1}}));
}

TEST(ConvexPath, HexagonOppositeMarks) {
  const Polygon hex({{0, 0}, {2, 0}, {3, 1}, {2, 2}, {0, 2}, {-1, 1}});
  const auto inst = instance(hex, all_indices(hex), 0, 3);
  const GeomTree t = build_convex_path(inst);
  EXPECT_EQ(t.edges.size(), 5u);
  expect_valid(inst, t);
  const auto deg = t.degrees();
  for (std::size_t i = 0; i < deg.size(); ++i) EXPECT_EQ(deg[i], (i == 0 || i == 3) ? 1u : 2u);
}

TEST(ConvexPath, RejectsNonConvex) {
  EXPECT_THROW(build_convex_path(instance(l_polygon(), all_indices(l_polygon()), 0, 1)), Error);
}

TEST(BuildTree, ConvexMatchesConvexPath) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    const Polygon p = degtree::testing::random_convex_polygon(rng, 4);
    const auto inst = instance(p, all_indices(p), 0, p.size() / 2);
    EXPECT_EQ(build_tree(inst).edges, build_convex_path(inst).edges);
  }
}

TEST(BuildTree, LPolygonDefaultMarks) {
  const auto inst = select_default_marks(instance(l_polygon(), all_indices(l_polygon())));
  const GeomTree t = build_tree(inst);
  EXPECT_EQ(t.edges.size(), 5u);
  expect_valid(inst, t);
  EXPECT_LE(t.degrees()[3], 3u);
}

TEST(BuildTree, MarksOnBothSidesOfTheChord) {
  // The chord from (1,1) ends at (1/10, 0); (2,0) lies on one side, (0,2) on the other.
  const auto inst = instance(l_polygon(), all_indices(l_polygon()), 1, 5);
  const GeomTree t = build_tree(inst);
  expect_valid(inst, t);
  EXPECT_EQ(t.degrees()[3], 2u);
}

TEST(BuildTree, SideWithOnlyReflexVertexUsesSingleMark) {
  // A = {(1,1), (2,0), (2,1)}: after the split the side containing (0,2)
  // holds only r.
  const auto inst = instance(l_polygon(), {1, 2, 3}, 1, 2);
  const GeomTree t = build_tree(inst);
  expect_valid(inst, t);
}

TEST(BuildTree, NoMarks) {
  const auto inst = instance(w_polygon(), all_indices(w_polygon()));
  const GeomTree t = build_tree(inst);
  expect_valid(inst, t);
}

TEST(BuildTree, RandomPolygons) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = gen::gen_random_polygon(8 + seed % 30, seed);
    const GeomTree t = build_tree(inst);
    expect_valid(inst, t);
  }
}

TEST(BuildTree, Deterministic) {
  const auto inst = gen::gen_random_polygon(30, 4242);
  EXPECT_EQ(build_tree(inst).edges, build_tree(inst).edges);
}
