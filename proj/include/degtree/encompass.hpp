#pragma once

// Degree-3 encompassing tree for disjoint segments: every segment is extended
// into a wall of a boxed arrangement, the free region is thickened into a
// simple polygon whose only reflex vertices are the segment tips, the polygon
// tree is mapped back to the endpoints, and the segments are swapped in.

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "degtree/error.hpp"
#include "degtree/geom.hpp"
#include "degtree/polygon.hpp"
#include "degtree/tree.hpp"
#include "degtree/tree_builder.hpp"

namespace degtree {

/// Disjoint closed segments, no three endpoints on a line. Throws InvalidInput
/// naming the offending pair or triple.
inline void validate_segments(std::span<const Segment> s) {
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "need at least one segment");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].p == s[i].q) throw Error(ErrorCode::InvalidInput, "segment " + std::to_string(i) + " is a point");
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (segments_intersect(s[i], s[j], IntersectMode::Any))
        throw Error(ErrorCode::InvalidInput,
                    "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
  }
  std::vector<Point> pts;
  for (const auto& seg : s) {
    pts.push_back(seg.p);
    pts.push_back(seg.q);
  }
  if (auto t = find_collinear_triple(pts)) {
    std::ostringstream os;
    os << "collinear endpoints " << pts[(*t)[0]] << ", " << pts[(*t)[1]] << ", " << pts[(*t)[2]];
    throw Error(ErrorCode::InvalidInput, os.str());
  }
}

/// Axis-aligned box around the endpoints with the given margin. If a corner
/// is collinear with two endpoints, the sides are pushed out by different
/// amounts until no corner is.
inline Polygon bounding_box(std::span<const Segment> s, const Coord& margin) {
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "need at least one segment");
  if (sgn(margin) <= 0) throw Error(ErrorCode::InvalidInput, "margin must be positive");
  std::vector<Point> pts;
  for (const auto& seg : s) {
    pts.push_back(seg.p);
    pts.push_back(seg.q);
  }
  Coord x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
  for (const auto& p : pts) {
    if (p.x < x0) x0 = p.x;
    if (p.x > x1) x1 = p.x;
    if (p.y < y0) y0 = p.y;
    if (p.y > y1) y1 = p.y;
  }
  auto corner_ok = [&](const Point& c) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (orient(pts[i], pts[j], c) == Orientation::Collinear) return false;
    return true;
  };
  for (long k = 0;; ++k) {
    const Coord left = x0 - margin - Coord(k) * margin / 7;
    const Coord right = x1 + margin + Coord(k) * margin / 11;
    const Coord bottom = y0 - margin - Coord(k) * margin / 13;
    const Coord top = y1 + margin;
    std::vector<Point> box{{left, bottom}, {right, bottom}, {right, top}, {left, top}};
    if (std::all_of(box.begin(), box.end(), corner_ok)) return Polygon(std::move(box), Polygon::Unchecked{});
  }
}

enum class HostKind { Box, Barrier };

/// One extended segment. The wall runs from the tip through the extended
/// endpoint to the hit point on the structure built so far.
struct Barrier {
  std::size_t segment = 0;
  Point tip;  ///< non-extended endpoint
  Point end;  ///< extended endpoint
  Point hit;
  HostKind host_kind = HostKind::Box;
  std::size_t host = 0;  ///< box edge index, or position of the host in the barrier order
  int side = 0;          ///< for a barrier host: orient(host tip, host hit, end)

  Segment wall() const { return {tip, hit}; }
};

struct BarrierSubdivision {
  Polygon box;
  std::vector<Barrier> barriers;  ///< in processing order

  std::vector<std::size_t> order() const {
    std::vector<std::size_t> o;
    for (const auto& b : barriers) o.push_back(b.segment);
    return o;
  }
};

namespace detail {

struct WallHit {
  Coord t;
  Point point;
  HostKind kind;
  std::size_t index;
  bool at_vertex;
};

/// First point where the ray from `from` along `dir` meets a box edge or an
/// existing wall. Hits at a wall end, or at two walls at once, are flagged.
inline std::optional<WallHit> cast_into_structure(const Polygon& box, const std::vector<Barrier>& walls,
                                                  const Point& from, const Point& dir) {
  std::optional<WallHit> best;
  auto consider = [&](const Segment& w, HostKind kind, std::size_t index) {
    const Point e = w.q - w.p;
    const Coord den = cross(dir, e);
    if (sgn(den) == 0) return;
    const Point d = w.p - from;
    const Coord t = cross(d, e) / den;
    const Coord s = cross(d, dir) / den;
    if (sgn(t) <= 0 || sgn(s) < 0 || s > 1) return;
    const bool at_end = sgn(s) == 0 || s == 1;
    if (best && t == best->t) {
      best->at_vertex = true;
      return;
    }
    if (!best || t < best->t) best = WallHit{t, from + t * dir, kind, index, at_end};
  };
  for (std::size_t k = 0; k < 4; ++k) consider(box.edge(k), HostKind::Box, k);
  for (std::size_t j = 0; j < walls.size(); ++j) consider(walls[j].wall(), HostKind::Barrier, j);
  return best;
}

}  // namespace detail

/// Extends the segments one at a time, each from an endpoint on the hull of
/// the remaining endpoints (lexicographic order), to the first structure hit.
/// A candidate is skipped if its extension meets a remaining segment or lands
/// on a wall end; if no hull candidate works, every endpoint is tried.
inline BarrierSubdivision extend_all(std::span<const Segment> s, const Polygon& box) {
  BarrierSubdivision out;
  out.box = box;
  std::vector<bool> done(s.size(), false);
  for (std::size_t step = 0; step < s.size(); ++step) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!done[i]) {
        pts.push_back(s[i].p);
        pts.push_back(s[i].q);
      }
    const auto hull = convex_hull(pts);

    struct Candidate {
      Point end;
      std::size_t segment;
      bool end_is_p;
    };
    std::vector<Candidate> all;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!done[i]) {
        all.push_back({s[i].p, i, true});
        all.push_back({s[i].q, i, false});
      }
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.end < b.end; });
    std::vector<Candidate> ranked;
    for (const auto& c : all)
      if (on_hull_boundary(hull, c.end)) ranked.push_back(c);
    for (const auto& c : all)
      if (!on_hull_boundary(hull, c.end)) ranked.push_back(c);

    std::optional<Barrier> chosen;
    for (const auto& c : ranked) {
      const Point tip = c.end_is_p ? s[c.segment].q : s[c.segment].p;
      const auto hit = detail::cast_into_structure(box, out.barriers, c.end, c.end - tip);
      if (!hit || hit->at_vertex) continue;
      const Segment ext{c.end, hit->point};
      bool blocked = false;
      for (std::size_t i = 0; i < s.size() && !blocked; ++i)
        if (!done[i] && i != c.segment && segments_intersect(ext, s[i], IntersectMode::Any)) blocked = true;
      if (blocked) continue;
      Barrier b{c.segment, tip, c.end, hit->point, hit->kind, hit->index, 0};
      if (b.host_kind == HostKind::Barrier) {
        const Barrier& h = out.barriers[b.host];
        b.side = orient_sign(h.tip, h.hit, b.end);
      }
      chosen = std::move(b);
      break;
    }
    if (!chosen) throw Error(ErrorCode::ExtensionStuck, "no segment can be extended at step " + std::to_string(step));
    done[chosen->segment] = true;
    out.barriers.push_back(std::move(*chosen));
  }
  return out;
}

/// Smallest squared distance between a structure point (endpoint, wall end,
/// box corner) and a box edge or wall that does not contain it.
inline Coord min_feature_distance2(const BarrierSubdivision& b) {
  std::vector<Point> pts;
  std::vector<Segment> lines;
  for (std::size_t k = 0; k < 4; ++k) {
    pts.push_back(b.box[k]);
    lines.push_back(b.box.edge(k));
  }
  for (const auto& w : b.barriers) {
    pts.push_back(w.tip);
    pts.push_back(w.end);
    pts.push_back(w.hit);
    lines.push_back(w.wall());
  }
  std::optional<Coord> best;
  for (const auto& p : pts)
    for (const auto& l : lines) {
      if (on_segment(l, p)) continue;
      Coord d = squared_distance(p, l);
      if (!best || d < *best) best = std::move(d);
    }
  return *best;
}

/// Largest power of two epsilon with epsilon <= sqrt(d2) / 16.
inline Coord initial_epsilon(const Coord& d2) {
  const Coord bound = d2 / 256;
  Coord eps = 1;
  while (eps * eps > bound) eps /= 2;
  while (4 * eps * eps <= bound) eps *= 2;
  return eps;
}

struct SlitPolygon {
  Polygon q;
  std::vector<std::size_t> tip_of;   ///< segment index -> q vertex at the tip
  std::vector<std::size_t> side_of;  ///< segment index -> q vertex standing in for the extended endpoint
  Coord epsilon;
};

namespace detail {

/// Nearest multiple of g.
inline Coord snap(const Coord& v, const Coord& g) {
  mpz_class k;
  const Coord scaled = v / g + Coord(1, 2);
  mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Coord(k) * g;
}

inline Point snap(const Point& p, const Coord& g) { return {snap(p.x, g), snap(p.y, g)}; }

}  // namespace detail

/// Opens every wall into a thin wedge: apex at the exact tip, base corners
/// eps/4 either side of where the wall crosses its host's boundary line. The
/// box is shrunk by eps/2. Walking the result counterclockwise gives q.
/// Corners and side points are snapped to a fine grid to keep coordinates
/// small. Throws SimplifyInvalid if q is not simple, has reflex vertices
/// other than the tips, or strays more than eps from the structure.
inline SlitPolygon simplify(const BarrierSubdivision& b, const Coord& eps) {
  if (sgn(eps) <= 0) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
  const std::size_t n = b.barriers.size();
  const Coord grid = eps / (1 << 20);
  const Coord inset = eps / 2;
  const Coord half_base = eps / 4;
  auto fail = [](const std::string& why) { throw Error(ErrorCode::SimplifyInvalid, why); };

  const Coord x0 = b.box[0].x + inset, y0 = b.box[0].y + inset;
  const Coord x1 = b.box[2].x - inset, y1 = b.box[2].y - inset;
  const std::vector<Point> inner{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};

  // Corner[i][0] is on the negative side of the directed wall tip -> hit.
  std::vector<std::array<Point, 2>> corner(n);
  std::vector<Point> cross_at(n);
  struct Item {
    Coord t;
    bool is_child;
    std::size_t index;
  };
  std::vector<std::vector<Item>> on_box(4);
  std::vector<std::array<std::vector<Item>, 2>> on_side(n);

  auto param = [](const Point& from, const Point& to, const Point& p) -> Coord {
    const Point d = to - from;
    return dot(p - from, d) / squared_length(d);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Barrier& w = b.barriers[i];
    Point l0, l1;
    if (w.host_kind == HostKind::Box) {
      l0 = inner[w.host];
      l1 = inner[(w.host + 1) % 4];
    } else {
      const Barrier& h = b.barriers[w.host];
      l0 = h.tip;
      l1 = corner[w.host][w.side > 0 ? 1 : 0];
    }
    const auto x = line_intersection(w.tip, w.hit, l0, l1);
    if (!x) fail("wall " + std::to_string(i) + " parallel to its host");
    const Coord t = param(l0, l1, *x);
    if (sgn(t) <= 0 || t >= 1) fail("wall " + std::to_string(i) + " misses its host side");
    cross_at[i] = *x;
    const Point dir = l1 - l0;
    const Point off = (half_base / max_norm(dir)) * dir;
    Point ca = detail::snap(*x + off, grid), cb = detail::snap(*x - off, grid);
    const int oa = orient_sign(w.tip, w.hit, ca), ob = orient_sign(w.tip, w.hit, cb);
    if (oa == 0 || ob == 0 || oa == ob) fail("wedge " + std::to_string(i) + " does not straddle its wall");
    if (oa > 0) std::swap(ca, cb);
    corner[i] = {ca, cb};
    if (w.host_kind == HostKind::Box) on_box[w.host].push_back({t, true, i});
    else on_side[w.host][w.side > 0 ? 1 : 0].push_back({t, true, i});
  }

  std::vector<Point> side_point(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Barrier& w = b.barriers[i];
    const Coord f = param(w.tip, cross_at[i], w.end);
    const Point on_edge = w.tip + f * (corner[i][1] - w.tip);
    const Point on_axis = w.tip + f * (cross_at[i] - w.tip);
    side_point[i] = detail::snap(midpoint(on_edge, on_axis), grid);
    on_side[i][1].push_back({f, false, i});
  }

  auto by_t = [](const Item& a, const Item& c) { return a.t < c.t; };
  for (auto& v : on_box) std::sort(v.begin(), v.end(), by_t);
  for (auto& sides : on_side)
    for (auto& v : sides) std::sort(v.begin(), v.end(), by_t);

  SlitPolygon out;
  out.epsilon = eps;
  out.tip_of.assign(n, 0);
  out.side_of.assign(n, 0);
  std::vector<Point> ring;
  std::vector<bool> is_tip;
  std::vector<std::size_t> slot(n);  // barrier position -> segment index
  for (std::size_t i = 0; i < n; ++i) slot[i] = b.barriers[i].segment;

  auto push = [&](const Point& p, bool tip) {
    ring.push_back(p);
    is_tip.push_back(tip);
  };
  // Depth is bounded by n, so plain recursion is fine.
  auto emit = [&](auto&& self, std::size_t i) -> void {
    push(corner[i][0], false);
    const auto& down = on_side[i][0];
    for (auto it = down.rbegin(); it != down.rend(); ++it) self(self, it->index);
    out.tip_of[slot[i]] = ring.size();
    push(b.barriers[i].tip, true);
    for (const Item& it : on_side[i][1]) {
      if (it.is_child) {
        self(self, it.index);
      } else {
        out.side_of[slot[i]] = ring.size();
        push(side_point[i], false);
      }
    }
    push(corner[i][1], false);
  };
  for (std::size_t k = 0; k < 4; ++k) {
    push(inner[k], false);
    for (const Item& it : on_box[k]) emit(emit, it.index);
  }

  if (!is_simple(ring)) fail("slit polygon is not simple at epsilon " + eps.get_str());
  if (sgn(signed_area2(ring)) <= 0) fail("slit polygon is not counterclockwise");
  out.q = Polygon(std::move(ring), Polygon::Unchecked{});
  const auto cls = classify_vertices(out.q);
  for (std::size_t v = 0; v < out.q.size(); ++v)
    if (cls.is_reflex[v] != is_tip[v]) fail("vertex " + std::to_string(v) + " has the wrong turn");

  const Coord eps2 = eps * eps;
  for (std::size_t v = 0; v < out.q.size(); ++v) {
    const Point& p = out.q[v];
    bool near = false;
    for (std::size_t k = 0; k < 4 && !near; ++k) near = squared_distance(p, b.box.edge(k)) <= eps2;
    for (std::size_t i = 0; i < n && !near; ++i) near = squared_distance(p, b.barriers[i].wall()) <= eps2;
    if (!near) fail("vertex " + std::to_string(v) + " is farther than epsilon from the walls");
  }
  return out;
}

/// Runs the polygon tree construction on q with A = tips and side points,
/// marks at the lexicographically extreme side points, and maps the result
/// to the endpoints. Point 2i is segment i's p, 2i+1 its q. Throws
/// VisibilityMismatch if mapped edges cross each other or a segment.
inline GeomTree build_t0(const SlitPolygon& slit, std::span<const Segment> s) {
  const std::size_t n = s.size();
  MarkedInstance inst;
  inst.polygon = slit.q;
  std::vector<std::size_t> sides;
  for (std::size_t i = 0; i < n; ++i) {
    inst.a_set.push_back(slit.tip_of[i]);
    inst.a_set.push_back(slit.side_of[i]);
    sides.push_back(slit.side_of[i]);
  }
  normalize_a_set(inst.a_set);
  auto lex = [&](std::size_t a, std::size_t b) { return slit.q[a] < slit.q[b]; };
  inst.v1 = *std::min_element(sides.begin(), sides.end(), lex);
  if (n > 1) inst.v2 = *std::max_element(sides.begin(), sides.end(), lex);
  const GeomTree tq = build_tree(inst);

  std::vector<std::size_t> endpoint_of(slit.q.size(), detail::npos);
  GeomTree t;
  for (std::size_t i = 0; i < n; ++i) {
    t.points.push_back(s[i].p);
    t.points.push_back(s[i].q);
    const bool tip_is_p = slit.q[slit.tip_of[i]] == s[i].p;
    endpoint_of[slit.tip_of[i]] = tip_is_p ? 2 * i : 2 * i + 1;
    endpoint_of[slit.side_of[i]] = tip_is_p ? 2 * i + 1 : 2 * i;
  }
  for (auto [a, b] : tq.edges)
    t.edges.push_back(make_edge(endpoint_of[inst.a_set[a]], endpoint_of[inst.a_set[b]]));
  t.normalize();

  auto mismatch = [](const std::string& why) { throw Error(ErrorCode::VisibilityMismatch, why); };
  auto meets = [](const Segment& a, const Segment& b) {
    const bool share = a.p == b.p || a.p == b.q || a.q == b.p || a.q == b.q;
    return share ? segments_overlap(a, b) : segments_intersect(a, b, IntersectMode::Any);
  };
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Segment ei = t.segment(t.edges[i]);
    for (std::size_t j = i + 1; j < t.edges.size(); ++j)
      if (meets(ei, t.segment(t.edges[j]))) mismatch("mapped edges " + std::to_string(i) + ", " + std::to_string(j) + " cross");
    for (std::size_t k = 0; k < n; ++k) {
      const Segment& sk = s[k];
      if ((ei.p == sk.p && ei.q == sk.q) || (ei.p == sk.q && ei.q == sk.p)) continue;
      if (meets(ei, sk)) mismatch("mapped edge " + std::to_string(i) + " meets segment " + std::to_string(k));
    }
  }
  return t;
}

struct Swap {
  std::size_t segment;
  std::optional<Edge> removed;  ///< empty when the segment was already an edge
};

/// Inserts the segments in barrier order. Each insertion closes one cycle;
/// the cycle edge at the endpoint of larger degree is dropped, the tip
/// winning ties.
inline GeomTree add_segments_with_swaps(GeomTree t, std::span<const Barrier> order,
                                        std::vector<Swap>* log = nullptr) {
  for (const Barrier& w : order) {
    const auto u_opt = t.index_of(w.end), v_opt = t.index_of(w.tip);
    if (!u_opt || !v_opt) throw Error(ErrorCode::InvalidInput, "segment endpoint missing from tree");
    const std::size_t u = *u_opt, v = *v_opt;
    if (t.has_edge(u, v)) {
      if (log) log->push_back({w.segment, std::nullopt});
      continue;
    }
    std::vector<std::vector<std::size_t>> adj(t.points.size());
    for (auto [a, b] : t.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<std::size_t> parent(t.points.size(), detail::npos);
    std::deque<std::size_t> queue{u};
    parent[u] = u;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : adj[x])
        if (parent[y] == detail::npos) {
          parent[y] = x;
          queue.push_back(y);
        }
    }
    if (parent[v] == detail::npos) throw Error(ErrorCode::InvalidInput, "tree is not connected");
    // Path v -> ... -> u; the first step leaves v, the last enters u.
    std::size_t before_u = v;
    while (parent[before_u] != u) before_u = parent[before_u];
    const Edge at_v = make_edge(v, parent[v]);
    const Edge at_u = make_edge(u, before_u);
    const auto deg = t.degrees();
    const Edge doomed = deg[u] + 1 > deg[v] + 1 ? at_u : at_v;
    t.edges.erase(std::find(t.edges.begin(), t.edges.end(), doomed));
    t.edges.push_back(make_edge(u, v));
    t.normalize();
    if (log) log->push_back({w.segment, doomed});
  }
  return t;
}

struct EncompassConfig {
  std::optional<Coord> margin;   ///< default 1
  std::optional<Coord> epsilon;  ///< default from the feature distance
  int max_retries = 32;
};

struct EncompassResult {
  GeomTree tree;
  GeomTree t0;
  BarrierSubdivision subdivision;
  SlitPolygon slit;
  Coord epsilon;
  int retries = 0;
  std::vector<Swap> swaps;
};

inline EncompassResult encompass(std::span<const Segment> s, const EncompassConfig& cfg = {}) {
  validate_segments(s);
  EncompassResult res;
  res.subdivision = extend_all(s, bounding_box(s, cfg.margin.value_or(Coord(1))));
  Coord eps = cfg.epsilon ? *cfg.epsilon : initial_epsilon(min_feature_distance2(res.subdivision));
  std::string last;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    try {
      res.slit = simplify(res.subdivision, eps);
      res.t0 = build_t0(res.slit, s);
      res.epsilon = eps;
      res.retries = attempt;
      res.tree = add_segments_with_swaps(res.t0, res.subdivision.barriers, &res.swaps);
      return res;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SimplifyInvalid && e.code() != ErrorCode::VisibilityMismatch) throw;
      last = e.what();
      eps /= 2;
    }
  }
  std::ostringstream os;
  os << "gave up after " << cfg.max_retries << " retries (last epsilon " << Coord(2 * eps).get_str() << ": " << last
     << "); segments:";
  for (const auto& seg : s) os << ' ' << seg.p << '-' << seg.q;
  throw Error(ErrorCode::RetryExhausted, os.str());
}

}  // namespace degtree
