#include <gtest/gtest.h>

#include "degtree/commands.hpp"
#include "degtree/generators.hpp"
#include "degtree/io.hpp"
#include "degtree/svg.hpp"
#include "test_support.hpp"

using namespace degtree;
using namespace degtree::testing;

namespace {

io::InstanceFile polygon_file(const Polygon& p, std::vector<std::size_t> a = {}) {
  io::InstanceFile f;
  f.polygon = p.vertices();
  f.a_indices = std::move(a);
  return f;
}

io::InstanceFile segments_file(std::vector<Segment> s) {
  io::InstanceFile f;
  f.kind = io::InstanceKind::Segments;
  f.segments = std::move(s);
  return f;
}

}  // namespace

TEST(Coord, FormatsTerminatingAsDecimal) {
  EXPECT_EQ(io::format_coord(Coord(1, 8)), "0.125");
  EXPECT_EQ(io::format_coord(Coord(-3, 2)), "-1.5");
  EXPECT_EQ(io::format_coord(Coord(-1, 20)), "-0.05");
  EXPECT_EQ(io::format_coord(Coord(7)), "7");
  EXPECT_EQ(io::format_coord(Coord(0)), "0");
  EXPECT_EQ(io::format_coord(Coord(1, 3)), "1/3");
  EXPECT_EQ(io::format_coord(Coord(-22, 7)), "-22/7");
}

TEST(Coord, ParsesEveryAcceptedForm) {
  EXPECT_EQ(io::parse_coord(io::Json(5)), Coord(5));
  EXPECT_EQ(io::parse_coord(io::Json(-5)), Coord(-5));
  EXPECT_EQ(io::parse_coord(io::Json("0.1")), Coord(1, 10));
  EXPECT_EQ(io::parse_coord(io::Json("-.5")), Coord(-1, 2));
  EXPECT_EQ(io::parse_coord(io::Json("-0.25")), Coord(-1, 4));
  EXPECT_EQ(io::parse_coord(io::Json("6/4")), Coord(3, 2));
  EXPECT_EQ(io::parse_coord(io::Json("-1/3")), Coord(-1, 3));
  EXPECT_EQ(io::parse_coord(io::Json("+12")), Coord(12));
}

TEST(Coord, RejectsMalformed) {
  for (const char* s : {"", "abc", "1/0", "1/-2", "1.", "1.2.3", "--1", "1e5", "0x10", "/3"})
    EXPECT_THROW(io::parse_coord(io::Json(s)), Error) << s;
  EXPECT_THROW(io::parse_coord(io::Json(0.5)), Error);
  EXPECT_THROW(io::parse_coord(io::Json(nullptr)), Error);
}

TEST(Coord, RoundTripsRandomRationals) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (int i = 0; i < 2000; ++i) {
    Coord c(num(rng), den(rng));
    c.canonicalize();
    EXPECT_EQ(io::parse_coord(io::Json(io::format_coord(c))), c);
  }
}

TEST(Instance, PolygonRoundTrip) {
  auto f = polygon_file(Polygon({{0, 0}, {Coord(5, 2), 0}, {1, Coord(1, 3)}}), {0, 2});
  f.v1 = 0;
  f.v2 = 2;
  f.seed = 77;
  f.epsilon = Coord(1, 64);
  const auto back = io::instance_from_json(io::to_json(f));
  EXPECT_EQ(back.kind, io::InstanceKind::Polygon);
  EXPECT_EQ(back.polygon, f.polygon);
  EXPECT_EQ(back.a_indices, f.a_indices);
  EXPECT_EQ(back.v1, f.v1);
  EXPECT_EQ(back.v2, f.v2);
  EXPECT_EQ(back.seed, f.seed);
  EXPECT_EQ(back.epsilon, f.epsilon);
  EXPECT_FALSE(back.margin);
}

TEST(Instance, SegmentsRoundTrip) {
  const auto f = segments_file(gen::gen_random_segments(7, 3));
  const auto back = io::instance_from_json(io::to_json(f));
  EXPECT_EQ(back.kind, io::InstanceKind::Segments);
  EXPECT_EQ(back.segments, f.segments);
  EXPECT_EQ(io::to_json(back).dump(), io::to_json(f).dump());
}

TEST(Instance, BadIndexIsParseError) {
  auto j = io::to_json(polygon_file(l_polygon()));
  j["a_indices"] = {0, 1, 6};
  try {
    io::instance_from_json(j);
    FAIL() << "accepted an out-of-range index";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  j["a_indices"] = {0, 1};
  j["v1"] = -1;
  EXPECT_THROW(io::instance_from_json(j), Error);
}

TEST(Instance, ShapeErrors) {
  EXPECT_THROW(io::instance_from_json(io::Json::parse(R"({"kind":"nope"})")), Error);
  EXPECT_THROW(io::instance_from_json(io::Json::parse(R"([1,2])")), Error);
  EXPECT_THROW(io::instance_from_json(io::Json::parse(R"({"kind":"polygon-instance"})")), Error);
  EXPECT_THROW(io::instance_from_json(io::Json::parse(
                   R"({"kind":"polygon-instance","polygon":[[0,0],[1,0],[0,1]],"segments":[]})")),
               Error);
  EXPECT_THROW(io::instance_from_json(io::Json::parse(R"({"kind":"polygon-instance","polygon":[[0,0,1]]})")),
               Error);
  EXPECT_THROW(io::instance_from_json(io::Json::parse(R"({"kind":"segments-instance","segments":[[[0,0]]]})")),
               Error);
  EXPECT_THROW(io::instance_from_json(io::Json::parse(
                   R"({"kind":"segments-instance","segments":[],"seed":"x"})")),
               Error);
}

TEST(RunTree, LPolygonAllVertices) {
  const auto r = run_tree(polygon_file(l_polygon()));
  EXPECT_TRUE(r.report.ok()) << r.report.failures();
  EXPECT_EQ(r.tree.points.size(), 6u);
  EXPECT_EQ(r.tree.edges.size(), 5u);
  const auto deg = r.tree.degrees();
  const std::size_t corner = *r.tree.index_of(Point(1, 1));
  EXPECT_LE(deg[corner], 3u);
  EXPECT_EQ(r.vertices[corner].role, "reflex");
  std::size_t marks = 0;
  for (std::size_t k = 0; k < r.vertices.size(); ++k) {
    EXPECT_EQ(r.vertices[k].degree, deg[k]);
    if (r.vertices[k].mark) {
      ++marks;
      EXPECT_EQ(deg[k], 1u);
    }
  }
  EXPECT_EQ(marks, 2u);
}

TEST(RunTree, SquareGivesPath) {
  const auto r = run_tree(polygon_file(unit_square()));
  ASSERT_TRUE(r.report.ok()) << r.report.failures();
  auto deg = r.tree.degrees();
  std::sort(deg.begin(), deg.end());
  EXPECT_EQ(deg, (std::vector<std::size_t>{1, 1, 2, 2}));
}

TEST(RunTree, RemovableMarksAreDropped) {
  // W polygon, A = the two reflex vertices: the extremes are borrowed and removed again.
  const Polygon w({{0, 0}, {6, 0}, {6, 4}, {4, 1}, {3, 4}, {2, 1}, {0, 4}});
  const auto r = run_tree(polygon_file(w, {3, 5}));
  EXPECT_TRUE(r.report.ok()) << r.report.failures();
  EXPECT_EQ(r.tree.points.size(), 2u);
  EXPECT_EQ(r.tree.edges.size(), 1u);
}

TEST(RunTree, InvalidInstanceThrows) {
  // A omits the reflex vertex.
  EXPECT_THROW(run_tree(polygon_file(l_polygon(), {0, 1, 2})), Error);
  EXPECT_THROW(run_tree(segments_file({{{0, 0}, {1, 1}}})), Error);
}

TEST(Result, RoundTripIsLossless) {
  const auto f = segments_file(gen::gen_random_segments(5, 11));
  const auto r = run_encompass(f, {});
  const auto j = io::to_json(r);
  const auto back = io::result_from_json(j);
  EXPECT_EQ(back.tree.points, r.tree.points);
  EXPECT_EQ(back.tree.edges, r.tree.edges);
  ASSERT_TRUE(back.trace);
  EXPECT_EQ(back.trace->epsilon, r.trace->epsilon);
  EXPECT_EQ(back.trace->extension_order, r.trace->extension_order);
  EXPECT_EQ(back.trace->removed, r.trace->removed);
  EXPECT_EQ(io::to_json(back).dump(2), j.dump(2));
}

TEST(Verify, ValidPairPasses) {
  const auto f = polygon_file(l_polygon());
  const auto r = io::result_from_json(io::to_json(run_tree(f)));
  EXPECT_TRUE(verify_result(r, f).ok());
  const auto g = segments_file(gen::gen_random_segments(6, 2));
  EXPECT_TRUE(verify_result(io::result_from_json(io::to_json(run_encompass(g, {}))), g).ok());
}

TEST(Verify, AddedEdgeIsNamedCycle) {
  const auto f = polygon_file(l_polygon());
  auto r = run_tree(f);
  // Close a cycle through two vertices that are not yet adjacent.
  const auto deg = r.tree.degrees();
  const std::size_t a = std::min_element(deg.begin(), deg.end()) - deg.begin();
  std::size_t b = 0;
  while (b == a || std::find(r.tree.edges.begin(), r.tree.edges.end(), make_edge(a, b)) != r.tree.edges.end()) ++b;
  r.tree.edges.push_back(make_edge(a, b));
  const auto rep = verify_result(r, f);
  EXPECT_FALSE(rep.ok());
  EXPECT_NE(rep.failures().find("cycle"), std::string::npos) << rep.failures();
}

TEST(Verify, SwappedEdgeIsNamedCycle) {
  // Same edge count, but one edge duplicated in place of another.
  const auto f = polygon_file(l_polygon());
  auto r = run_tree(f);
  r.tree.edges.back() = r.tree.edges.front();
  const auto rep = verify_result(r, f);
  EXPECT_FALSE(rep.ok());
}

TEST(Verify, MovedCoordinateBreaksInscription) {
  const auto f = polygon_file(l_polygon());
  auto r = run_tree(f);
  // Push the reflex corner outside the polygon.
  const std::size_t k = *r.tree.index_of(Point(1, 1));
  r.tree.points[k] = Point(Coord(3, 2), Coord(3, 2));
  EXPECT_FALSE(verify_result(r, f).ok());
}

TEST(Verify, MovedSegmentEndpointFails) {
  const auto f = segments_file(gen::gen_random_segments(5, 8));
  auto r = run_encompass(f, {});
  r.tree.points[0].x += Coord(1, 7);
  EXPECT_FALSE(verify_result(r, f).ok());
}

TEST(Verify, OutOfRangeEdgeFailsWithoutThrowing) {
  const auto f = polygon_file(l_polygon());
  auto j = io::to_json(run_tree(f));
  j["edges"][0] = {0, 99};
  const auto r = io::result_from_json(j);
  EXPECT_FALSE(verify_result(r, f).ok());
}

TEST(Verify, KindMismatch) {
  const auto f = polygon_file(l_polygon());
  const auto g = segments_file({{{0, 0}, {1, 1}}});
  EXPECT_FALSE(verify_result(run_tree(f), g).ok());
}

TEST(RunEncompass, OneSegment) {
  const auto r = run_encompass(segments_file({{{0, 0}, {1, 1}}}), {});
  EXPECT_TRUE(r.report.ok());
  EXPECT_EQ(r.tree.edges.size(), 1u);
  EXPECT_EQ(r.vertices.size(), 2u);
}

TEST(RunEncompass, ByteIdenticalReruns) {
  const auto f = segments_file(gen::gen_random_segments(5, 42));
  EXPECT_EQ(io::to_json(run_encompass(f, {})).dump(2), io::to_json(run_encompass(f, {})).dump(2));
}

TEST(RunEncompass, CollinearTripleNamed) {
  const auto f = segments_file({{{0, 0}, {1, 0}}, {{2, 0}, {3, 5}}});
  try {
    run_encompass(f, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("(2, 0)"), std::string::npos) << e.what();
  }
}

TEST(Svg, IsWellFormedAndPresentational) {
  const auto f = polygon_file(l_polygon());
  const auto r = run_tree(f);
  const std::string s = svg::render_tree(l_polygon(), r.tree, {});
  EXPECT_EQ(s.rfind("<?xml", 0), 0u);
  EXPECT_NE(s.find("<svg"), std::string::npos);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n') > 5, true);
  const auto g = segments_file(gen::gen_random_segments(4, 1));
  const std::string e = svg::render_encompassing(g.segments, run_encompass(g, {}).tree);
  EXPECT_NE(e.find("stroke-dasharray"), std::string::npos);
}
