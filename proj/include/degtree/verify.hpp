#pragma once

// Independent validators. Everything here is written against the exact
// predicates in geom.hpp only; no builder code path is reused, so a bug in
// the construction cannot hide itself from these checks.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "degtree/error.hpp"
#include "degtree/geom.hpp"
#include "degtree/polygon.hpp"
#include "degtree/tree.hpp"

namespace degtree::verify {

struct Fact {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct Report {
  std::vector<Fact> facts;

  void add(std::string name, bool pass, std::string detail = {}) {
    facts.push_back({std::move(name), pass, std::move(detail)});
  }
  void merge(const Report& other) { facts.insert(facts.end(), other.facts.begin(), other.facts.end()); }

  bool ok() const {
    return std::all_of(facts.begin(), facts.end(), [](const Fact& f) { return f.pass; });
  }

  std::string failures() const {
    std::string out;
    for (const auto& f : facts) {
      if (f.pass) continue;
      if (!out.empty()) out += "; ";
      out += f.name;
      if (!f.detail.empty()) out += " (" + f.detail + ")";
    }
    return out;
  }
};

inline Report check_tree(const GeomTree& t) {
  Report rep;
  const std::size_t n = t.points.size();
  bool in_range = true;
  for (auto [a, b] : t.edges) in_range = in_range && a < n && b < n && a != b;
  rep.add("edge_indices", in_range);
  if (!in_range) return rep;

  UnionFind uf(n);
  std::optional<Edge> closing;
  for (const auto& e : t.edges)
    if (!uf.unite(e.first, e.second) && !closing) closing = e;
  std::size_t components = 0;
  for (std::size_t i = 0; i < n; ++i) components += uf.find(i) == i;
  rep.add("acyclic", !closing,
          closing ? "cycle closed by edge " + std::to_string(closing->first) + "-" +
                        std::to_string(closing->second)
                  : "");
  rep.add("connected", n == 0 || components == 1, std::to_string(components) + " component(s)");
  rep.add("edge_count", n == 0 ? t.edges.empty() : t.edges.size() == n - 1,
          std::to_string(t.edges.size()) + " edges on " + std::to_string(n) + " vertices");
  return rep;
}

/// Tree edges must pairwise meet at most in a shared endpoint.
inline Report check_non_crossing(const GeomTree& t) {
  Report rep;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Segment si = t.segment(t.edges[i]);
    for (std::size_t j = i + 1; j < t.edges.size(); ++j) {
      const Segment sj = t.segment(t.edges[j]);
      const auto [a, b] = t.edges[i];
      const auto [c, d] = t.edges[j];
      const bool share = a == c || a == d || b == c || b == d;
      const bool bad = share ? segments_overlap(si, sj) || (a == c && b == d)
                             : segments_intersect(si, sj, IntersectMode::Any);
      if (bad) {
        std::ostringstream os;
        os << "edges " << a << "-" << b << " and " << c << "-" << d;
        rep.add("non_crossing", false, os.str());
        return rep;
      }
    }
  }
  rep.add("non_crossing", true);
  return rep;
}

namespace detail {

inline bool turns_clockwise(std::span<const Point> ring, std::size_t i) {
  const std::size_t n = ring.size();
  return orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) == Orientation::CW;
}

inline std::optional<std::size_t> vertex_index(std::span<const Point> ring, const Point& p) {
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == p) return i;
  return std::nullopt;
}

}  // namespace detail

/// Whether the straight edge between polygon vertices i and j is either a
/// boundary edge or runs through the open interior.
inline bool inscribed_edge(std::span<const Point> ring, std::size_t i, std::size_t j) {
  const std::size_t n = ring.size();
  if (i == j) return false;
  if ((i + 1) % n == j || (j + 1) % n == i) return true;
  const Segment ab{ring[i], ring[j]};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k + 1) % n;
    const Segment e{ring[k], ring[k2]};
    const bool incident = k == i || k == j || k2 == i || k2 == j;
    if (incident) {
      if (segments_overlap(ab, e)) return false;
      for (std::size_t v : {k, k2})
        if (v != i && v != j && on_segment(ab, ring[v])) return false;
    } else if (segments_intersect(ab, e, IntersectMode::Any)) {
      return false;
    }
  }
  return locate_point(ring, midpoint(ab.p, ab.q)) == Location::Inside;
}

/// Degree bounds against the polygon's own turn directions:
/// reflex <= 3, convex <= 2, marked == 1.
inline Report check_degrees(const GeomTree& t, const Polygon& p, std::span<const Point> marks) {
  Report rep;
  const auto deg = t.degrees();
  const auto& ring = p.vertices();
  bool ok = true;
  std::string why;
  for (std::size_t k = 0; k < t.points.size(); ++k) {
    const auto idx = detail::vertex_index(ring, t.points[k]);
    if (!idx) {
      ok = false;
      why = "tree vertex " + std::to_string(k) + " is not a polygon vertex";
      break;
    }
    const bool reflex = detail::turns_clockwise(ring, *idx);
    const bool marked = std::find(marks.begin(), marks.end(), t.points[k]) != marks.end();
    const std::size_t bound = marked ? 1 : (reflex ? 3 : 2);
    if (deg[k] > bound || (marked && deg[k] != 1 && t.points.size() > 1)) {
      ok = false;
      why = std::string(marked ? "marked" : (reflex ? "reflex" : "convex")) + " vertex " +
               std::to_string(*idx) + " has degree " + std::to_string(deg[k]);
      break;
    }
  }
  rep.add("degree_bounds", ok, why);
  return rep;
}

inline Report check_inscribed(const GeomTree& t, const Polygon& p) {
  Report rep;
  const auto& ring = p.vertices();
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < t.points.size(); ++k) {
    auto i = detail::vertex_index(ring, t.points[k]);
    if (!i) {
      rep.add("inscribed", false, "tree vertex " + std::to_string(k) + " is not a polygon vertex");
      return rep;
    }
    idx.push_back(*i);
  }
  for (auto [a, b] : t.edges) {
    if (!inscribed_edge(ring, idx[a], idx[b])) {
      rep.add("inscribed", false,
              "edge between polygon vertices " + std::to_string(idx[a]) + " and " +
                  std::to_string(idx[b]) + " leaves the interior");
      return rep;
    }
  }
  rep.add("inscribed", true);
  rep.merge(check_non_crossing(t));
  return rep;
}

/// Tree on all segment endpoints containing every segment, max degree 3,
/// and no edge crossing a segment.
inline Report check_encompassing(const GeomTree& t, std::span<const Segment> segments) {
  Report rep = check_tree(t);
  if (!rep.ok()) return rep;

  bool vertex_set = t.points.size() == 2 * segments.size();
  for (const auto& s : segments) vertex_set = vertex_set && t.index_of(s.p) && t.index_of(s.q);
  rep.add("vertex_set", vertex_set, "tree must span exactly the 2n endpoints");

  std::string missing;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    auto a = t.index_of(segments[i].p), b = t.index_of(segments[i].q);
    if (!a || !b || !t.has_edge(*a, *b)) {
      missing = "segment " + std::to_string(i) + " is not a tree edge";
      break;
    }
  }
  rep.add("segments_included", missing.empty(), missing);

  const auto deg = t.degrees();
  const std::size_t max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  rep.add("max_degree_3", max_deg <= 3, "max degree " + std::to_string(max_deg));

  rep.merge(check_non_crossing(t));

  std::string crossing;
  for (const auto& e : t.edges) {
    const Segment se = t.segment(e);
    for (std::size_t i = 0; i < segments.size() && crossing.empty(); ++i) {
      const Segment& s = segments[i];
      if ((se.p == s.p && se.q == s.q) || (se.p == s.q && se.q == s.p)) continue;
      const bool share = se.p == s.p || se.p == s.q || se.q == s.p || se.q == s.q;
      const bool bad = share ? segments_overlap(se, s) : segments_intersect(se, s, IntersectMode::Any);
      if (bad) crossing = "edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                          " meets segment " + std::to_string(i);
    }
  }
  rep.add("avoids_segments", crossing.empty(), crossing);
  return rep;
}

/// Exhaustive search over the non-crossing spanning trees of the visibility
/// graph on A that satisfy the degree bounds. `fn` receives each witness as
/// edges over positions in `a_set` and returns false to stop.
inline void for_each_inscribed_tree(const Polygon& p, const std::vector<std::size_t>& a_set,
                                    const std::vector<std::size_t>& marks,
                                    const std::function<bool(const std::vector<Edge>&)>& fn) {
  const std::size_t k = a_set.size();
  if (k > 9) throw Error(ErrorCode::TooLarge, "brute force is limited to |A| <= 9");
  if (k <= 1) {
    fn({});
    return;
  }
  const auto& ring = p.vertices();
  std::vector<std::size_t> cap(k);
  for (std::size_t i = 0; i < k; ++i) {
    const bool marked = std::find(marks.begin(), marks.end(), a_set[i]) != marks.end();
    cap[i] = marked ? 1 : (detail::turns_clockwise(ring, a_set[i]) ? 3 : 2);
  }
  std::vector<Edge> candidates;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (inscribed_edge(ring, a_set[i], a_set[j])) candidates.push_back({i, j});

  std::vector<Edge> chosen;
  std::vector<std::size_t> deg(k, 0);
  std::vector<std::size_t> comp(k);
  for (std::size_t i = 0; i < k; ++i) comp[i] = i;
  bool stop = false;

  auto crosses_chosen = [&](const Edge& e) {
    const Segment se{ring[a_set[e.first]], ring[a_set[e.second]]};
    for (const Edge& c : chosen) {
      const Segment sc{ring[a_set[c.first]], ring[a_set[c.second]]};
      const bool share = c.first == e.first || c.first == e.second || c.second == e.first ||
                         c.second == e.second;
      if (share ? segments_overlap(se, sc) : segments_intersect(se, sc, IntersectMode::Any)) return true;
    }
    return false;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (stop) return;
    if (chosen.size() == k - 1) {
      if (!fn(chosen)) stop = true;
      return;
    }
    if (candidates.size() - next < (k - 1) - chosen.size()) return;
    const Edge& e = candidates[next];
    if (comp[e.first] != comp[e.second] && deg[e.first] < cap[e.first] &&
        deg[e.second] < cap[e.second] && !crosses_chosen(e)) {
      const auto saved = comp;
      const std::size_t from = comp[e.second], to = comp[e.first];
      for (auto& c : comp)
        if (c == from) c = to;
      ++deg[e.first];
      ++deg[e.second];
      chosen.push_back(e);
      rec(next + 1);
      chosen.pop_back();
      --deg[e.first];
      --deg[e.second];
      comp = saved;
    }
    rec(next + 1);
  };
  rec(0);
}

inline bool brute_force_inscribed_tree_exists(const Polygon& p, const std::vector<std::size_t>& a_set,
                                              const std::vector<std::size_t>& marks) {
  bool found = false;
  for_each_inscribed_tree(p, a_set, marks, [&](const std::vector<Edge>&) {
    found = true;
    return false;
  });
  return found;
}

/// The constraint set the brute force enumerates, applied to one candidate
/// (edges over positions in `a_set`).
inline bool is_valid_witness(const Polygon& p, const std::vector<std::size_t>& a_set,
                             const std::vector<std::size_t>& marks, const std::vector<Edge>& edges) {
  const std::size_t k = a_set.size();
  const auto& ring = p.vertices();
  if (edges.size() + 1 != k && !(k == 0 && edges.empty())) return false;
  GeomTree t;
  for (std::size_t v : a_set) t.points.push_back(ring[v]);
  t.edges = edges;
  if (!check_tree(t).ok() || !check_non_crossing(t).ok()) return false;
  for (auto [a, b] : edges)
    if (!inscribed_edge(ring, a_set[a], a_set[b])) return false;
  std::vector<Point> mark_points;
  for (std::size_t m : marks) mark_points.push_back(ring[m]);
  return check_degrees(t, p, mark_points).ok();
}

}  // namespace degtree::verify
