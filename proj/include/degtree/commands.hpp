#pragma once

// End-to-end drivers behind the command-line tool: build, verify, and
// package a result. Verification here only consults the instance and the
// emitted tree, never the builders.

#include <algorithm>
#include <string>
#include <vector>

#include "degtree/encompass.hpp"
#include "degtree/io.hpp"
#include "degtree/polygon.hpp"
#include "degtree/tree_builder.hpp"
#include "degtree/verify.hpp"

namespace degtree {

inline std::vector<std::size_t> a_set_of(const io::InstanceFile& f) {
  std::vector<std::size_t> a = f.a_indices;
  if (a.empty())
    for (std::size_t i = 0; i < f.polygon.size(); ++i) a.push_back(i);
  normalize_a_set(a);
  return a;
}

/// Full check of a polygon tree: tree shape, vertex set equal to A,
/// inscription, and degree bounds with the given marks.
inline verify::Report verify_polygon_tree(const GeomTree& t, const Polygon& p, const std::vector<std::size_t>& a_set,
                                          const std::vector<Point>& marks) {
  verify::Report rep = verify::check_tree(t);
  if (!rep.ok()) return rep;
  bool same = t.points.size() == a_set.size();
  for (std::size_t v : a_set) same = same && t.index_of(p[v]);
  rep.add("vertex_set", same, "tree vertices must be exactly A");
  bool marks_ok = true;
  for (const Point& m : marks) marks_ok = marks_ok && t.index_of(m);
  rep.add("marks_present", marks_ok, "every mark must be a tree vertex");
  rep.merge(verify::check_inscribed(t, p));
  rep.merge(verify::check_degrees(t, p, marks));
  return rep;
}

inline io::ResultFile run_tree(const io::InstanceFile& f) {
  if (f.kind != io::InstanceKind::Polygon) throw Error(ErrorCode::InvalidInput, "expected a polygon-instance");
  MarkedInstance inst;
  inst.polygon = Polygon(f.polygon);
  inst.a_set = a_set_of(f);
  inst.v1 = f.v1;
  inst.v2 = f.v2;
  if (!inst.v1 && !inst.v2) inst = select_default_marks(std::move(inst));
  GeomTree t = build_tree(inst);

  std::vector<std::size_t> doomed;
  for (std::size_t v : inst.removable)
    doomed.push_back(static_cast<std::size_t>(std::lower_bound(inst.a_set.begin(), inst.a_set.end(), v) - inst.a_set.begin()));
  t = remove_vertices(t, doomed);
  std::vector<Point> marks;
  for (std::size_t m : inst.marks())
    if (!contains(inst.removable, m)) marks.push_back(inst.polygon[m]);

  io::ResultFile r;
  r.kind = io::InstanceKind::Polygon;
  r.tree = t;
  const auto cls = classify_vertices(inst.polygon);
  const auto deg = t.degrees();
  for (std::size_t k = 0; k < t.points.size(); ++k) {
    const std::size_t v = *inst.polygon.index_of(t.points[k]);
    const bool mark = std::find(marks.begin(), marks.end(), t.points[k]) != marks.end();
    r.vertices.push_back({deg[k], cls.is_reflex[v] ? "reflex" : "convex", mark});
  }
  r.report = verify_polygon_tree(t, inst.polygon, a_set_of(f), marks);
  return r;
}

inline io::ResultFile run_encompass(const io::InstanceFile& f, const EncompassConfig& cfg, EncompassResult* detail = nullptr) {
  if (f.kind != io::InstanceKind::Segments) throw Error(ErrorCode::InvalidInput, "expected a segments-instance");
  EncompassResult res = encompass(f.segments, cfg);
  io::ResultFile r;
  r.kind = io::InstanceKind::Segments;
  r.tree = res.tree;
  const auto deg = r.tree.degrees();
  std::vector<bool> is_tip(r.tree.points.size(), false);
  for (const auto& w : res.subdivision.barriers) is_tip[*r.tree.index_of(w.tip)] = true;
  for (std::size_t k = 0; k < r.tree.points.size(); ++k) r.vertices.push_back({deg[k], is_tip[k] ? "tip" : "extended", false});
  r.report = verify::check_encompassing(r.tree, f.segments);
  io::Trace tr;
  tr.extension_order = res.subdivision.order();
  tr.epsilon = res.epsilon;
  tr.retries = res.retries;
  for (const auto& s : res.swaps) tr.removed.push_back(s.removed);
  r.trace = std::move(tr);
  if (detail) *detail = std::move(res);
  return r;
}

/// Re-checks a result against its instance from scratch.
inline verify::Report verify_result(const io::ResultFile& r, const io::InstanceFile& f) {
  verify::Report rep;
  if (r.kind != f.kind) {
    rep.add("kind", false, "result and instance kinds differ");
    return rep;
  }
  if (f.kind == io::InstanceKind::Segments) return verify::check_encompassing(r.tree, f.segments);

  const Polygon p(f.polygon);
  const auto a = a_set_of(f);
  std::vector<Point> marks;
  if (f.v1 || f.v2) {
    for (const auto& m : {f.v1, f.v2})
      if (m) marks.push_back(p[*m]);
  } else {
    for (std::size_t k = 0; k < r.vertices.size() && k < r.tree.points.size(); ++k)
      if (r.vertices[k].mark) marks.push_back(r.tree.points[k]);
  }
  return verify_polygon_tree(r.tree, p, a, marks);
}

}  // namespace degtree
