#pragma once

// Bounded-degree inscribed trees in simple polygons.
//
// Given a simple polygon P, a vertex subset A containing every reflex vertex,
// and up to two convex marked vertices of A, build_tree returns a
// non-crossing tree on exactly A, inscribed in P, with
//   deg <= 3 at reflex vertices, deg <= 2 at convex vertices,
//   deg == 1 at the marked vertices.
//
// The construction recurses on the number of reflex vertices: a ray from the
// lexicographically smallest reflex vertex r splits P into two polygons in
// which r is convex; r is kept in both vertex sets and the two subtrees are
// glued at r. Convex pieces are solved by a boundary-ordered path.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degtree/error.hpp"
#include "degtree/geom.hpp"
#include "degtree/polygon.hpp"
#include "degtree/tree.hpp"

namespace degtree {

struct MarkedInstance {
  Polygon polygon;
  std::vector<std::size_t> a_set;  ///< polygon vertex indices, sorted and unique
  std::optional<std::size_t> v1;
  std::optional<std::size_t> v2;
  /// Vertices that select_default_marks added to a_set; they end up as
  /// leaves and may be deleted from the result.
  std::vector<std::size_t> removable;

  std::vector<std::size_t> marks() const {
    std::vector<std::size_t> m;
    if (v1) m.push_back(*v1);
    if (v2) m.push_back(*v2);
    return m;
  }
};

inline void normalize_a_set(std::vector<std::size_t>& a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
}

inline bool contains(const std::vector<std::size_t>& sorted, std::size_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

inline void validate_instance(const MarkedInstance& inst) {
  const std::size_t n = inst.polygon.size();
  if (inst.a_set.empty()) throw Error(ErrorCode::InvalidInstance, "empty vertex set");
  if (!std::is_sorted(inst.a_set.begin(), inst.a_set.end()) ||
      std::adjacent_find(inst.a_set.begin(), inst.a_set.end()) != inst.a_set.end())
    throw Error(ErrorCode::InvalidInstance, "vertex set must be sorted and duplicate-free");
  if (inst.a_set.back() >= n) throw Error(ErrorCode::InvalidInstance, "vertex index out of range");
  const auto cls = classify_vertices(inst.polygon);
  for (std::size_t r : cls.reflex)
    if (!contains(inst.a_set, r))
      throw Error(ErrorCode::InvalidInstance, "reflex vertex " + std::to_string(r) + " missing from A");
  for (std::size_t m : inst.marks()) {
    if (!contains(inst.a_set, m))
      throw Error(ErrorCode::InvalidInstance, "mark " + std::to_string(m) + " not in A");
    if (cls.is_reflex[m])
      throw Error(ErrorCode::InvalidInstance, "mark " + std::to_string(m) + " is reflex");
  }
  if (inst.v1 && inst.v2 && *inst.v1 == *inst.v2)
    throw Error(ErrorCode::InvalidInstance, "marks must be distinct");
}

/// Picks v1, v2 when the caller gave none: the lexicographically extreme
/// convex members of A, or, if A has fewer than two convex members, the
/// polygon's lexicographically extreme vertices (added to A and flagged
/// removable).
inline MarkedInstance select_default_marks(MarkedInstance inst) {
  normalize_a_set(inst.a_set);
  if (inst.a_set.size() < 2) throw Error(ErrorCode::TooFewVertices, "A needs at least 2 vertices");
  if (inst.v1 || inst.v2) return inst;
  const auto& p = inst.polygon;
  const auto cls = classify_vertices(p);
  std::vector<std::size_t> convex_members;
  for (std::size_t a : inst.a_set)
    if (!cls.is_reflex[a]) convex_members.push_back(a);
  auto lex_less = [&](std::size_t i, std::size_t j) { return p[i] < p[j]; };
  if (convex_members.size() >= 2) {
    inst.v1 = *std::min_element(convex_members.begin(), convex_members.end(), lex_less);
    inst.v2 = *std::max_element(convex_members.begin(), convex_members.end(), lex_less);
    return inst;
  }
  std::vector<std::size_t> all(p.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::size_t lo = *std::min_element(all.begin(), all.end(), lex_less);
  const std::size_t hi = *std::max_element(all.begin(), all.end(), lex_less);
  for (std::size_t v : {lo, hi}) {
    if (!contains(inst.a_set, v)) {
      inst.a_set.push_back(v);
      inst.removable.push_back(v);
    }
  }
  normalize_a_set(inst.a_set);
  inst.v1 = lo;
  inst.v2 = hi;
  return inst;
}

namespace detail {

/// Visiting order of the boundary-ordered path on a convex polygon. `a` is
/// sorted (counterclockwise boundary order); `marks` holds 0, 1 or 2 members.
inline std::vector<std::size_t> convex_path_order(const std::vector<std::size_t>& a,
                                                  const std::vector<std::size_t>& marks) {
  const std::size_t k = a.size();
  auto pos = [&](std::size_t v) {
    return static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), v) - a.begin());
  };
  std::vector<std::size_t> order;
  order.reserve(k);
  if (marks.empty()) return a;
  const std::size_t p1 = pos(marks[0]);
  if (marks.size() == 1) {
    for (std::size_t j = 0; j < k; ++j) order.push_back(a[(p1 + j) % k]);
    return order;
  }
  const std::size_t p2 = pos(marks[1]);
  order.push_back(a[p1]);
  // Chain Q1: counterclockwise from v1 up to v2.
  for (std::size_t j = (p1 + 1) % k; j != p2; j = (j + 1) % k) order.push_back(a[j]);
  // Chain Q2: clockwise from v1 toward v2.
  for (std::size_t j = (p1 + k - 1) % k; j != p2; j = (j + k - 1) % k) order.push_back(a[j]);
  order.push_back(a[p2]);
  return order;
}

inline void check_path_non_crossing(const Polygon& poly, const std::vector<std::size_t>& order) {
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const Segment ei{poly[order[i]], poly[order[i + 1]]};
    for (std::size_t j = i + 1; j + 1 < order.size(); ++j) {
      const Segment ej{poly[order[j]], poly[order[j + 1]]};
      const bool share = j == i + 1;
      if (share ? segments_overlap(ei, ej) : segments_intersect(ei, ej, IntersectMode::Any))
        throw std::logic_error("convex base case produced crossing path edges");
    }
  }
}

struct SubProblem {
  Polygon poly;
  std::vector<std::size_t> origin;  ///< local vertex -> root polygon index (npos for q points)
  std::vector<std::size_t> a;       ///< local indices, sorted
  std::vector<std::size_t> marks;   ///< local indices, at most 2
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline void build_rec(const SubProblem& sp, std::vector<Edge>& out) {
  if (sp.a.size() <= 1) return;
  const Polygon& poly = sp.poly;
  const auto cls = classify_vertices(poly);
  if (cls.reflex.empty()) {
    const auto order = convex_path_order(sp.a, sp.marks);
    check_path_non_crossing(poly, order);
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      out.push_back(make_edge(sp.origin[order[i]], sp.origin[order[i + 1]]));
    return;
  }

  std::size_t r = cls.reflex.front();
  for (std::size_t v : cls.reflex)
    if (poly[v] < poly[r]) r = v;
  if (!contains(sp.a, r)) throw Error(ErrorCode::InvalidInstance, "reflex vertex outside A");

  const RayHit hit = shoot_ray(poly, r);
  const SplitResult sr = split(poly, r, hit.q, hit.edge);

  auto make_child = [&](const Polygon& child, const std::vector<std::optional<std::size_t>>& parent_of) {
    SubProblem c{child, {}, {}, {}};
    c.origin.resize(child.size(), npos);
    std::vector<std::size_t> local_of_parent(poly.size(), npos);
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (!parent_of[i]) continue;
      c.origin[i] = sp.origin[*parent_of[i]];
      local_of_parent[*parent_of[i]] = i;
      if (contains(sp.a, *parent_of[i])) c.a.push_back(i);
    }
    normalize_a_set(c.a);
    std::vector<std::size_t> marks;
    for (std::size_t m : sp.marks)
      if (local_of_parent[m] != npos) marks.push_back(local_of_parent[m]);
    return std::pair{c, marks};
  };
  auto [c1, m1] = make_child(sr.p1, sr.parent_of_p1);
  auto [c2, m2] = make_child(sr.p2, sr.parent_of_p2);
  const std::size_t r1 = sr.r_index_in_p1;
  const std::size_t r2 = sr.r_index_in_p2;

  // r plus the lexicographically smallest other convex member, if any.
  auto r_side_marks = [](const SubProblem& c, std::size_t rc) {
    std::vector<std::size_t> marks{rc};
    std::optional<std::size_t> aux;
    for (std::size_t v : c.a) {
      if (v == rc) continue;
      const auto& P = c.poly;
      if (orient(P[P.prev(v)], P[v], P[P.next(v)]) == Orientation::CW) continue;
      if (!aux || P[v] < P[*aux]) aux = v;
    }
    if (aux) marks.push_back(*aux);
    return marks;
  };

  if (m2.empty()) {
    // Case 1 (or no marks): the marked side keeps its marks; r is a leaf on the other side.
    c1.marks = m1;
    c2.marks = r_side_marks(c2, r2);
  } else if (m1.empty()) {
    c2.marks = m2;
    c1.marks = r_side_marks(c1, r1);
  } else {
    // Case 2: one mark per side; r becomes the second mark on both.
    c1.marks = {m1.front(), r1};
    c2.marks = {m2.front(), r2};
  }
  build_rec(c1, out);
  build_rec(c2, out);
}

inline GeomTree to_geom_tree(const MarkedInstance& inst, const std::vector<Edge>& polygon_edges) {
  GeomTree t;
  std::vector<std::size_t> slot(inst.polygon.size(), npos);
  for (std::size_t i = 0; i < inst.a_set.size(); ++i) {
    slot[inst.a_set[i]] = i;
    t.points.push_back(inst.polygon[inst.a_set[i]]);
  }
  for (auto [a, b] : polygon_edges) t.edges.push_back(make_edge(slot[a], slot[b]));
  t.normalize();
  return t;
}

}  // namespace detail

/// Boundary-ordered path for a convex polygon: v1, the members of A on the
/// counterclockwise chain to v2, then the remaining members from the v1 side
/// toward v2, and finally v2.
inline GeomTree build_convex_path(const MarkedInstance& inst) {
  validate_instance(inst);
  if (!is_convex(inst.polygon))
    throw Error(ErrorCode::InvalidInstance, "build_convex_path needs a convex polygon");
  const auto order = detail::convex_path_order(inst.a_set, inst.marks());
  detail::check_path_non_crossing(inst.polygon, order);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) edges.push_back(make_edge(order[i], order[i + 1]));
  return detail::to_geom_tree(inst, edges);
}

/// Inscribed tree on A; the result's point k is polygon vertex a_set[k].
inline GeomTree build_tree(const MarkedInstance& inst) {
  validate_instance(inst);
  detail::SubProblem root{inst.polygon, {}, inst.a_set, inst.marks()};
  root.origin.resize(inst.polygon.size());
  for (std::size_t i = 0; i < root.origin.size(); ++i) root.origin[i] = i;
  std::vector<Edge> edges;
  detail::build_rec(root, edges);
  return detail::to_geom_tree(inst, edges);
}

}  // namespace degtree
