#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "degtree/error.hpp"
#include "degtree/geom.hpp"

namespace degtree {

/// Exact O(n^2) simplicity test: non-adjacent edges are disjoint, adjacent
/// edges meet only in their shared vertex, and no vertex repeats.
inline bool is_simple(std::span<const Point> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  std::vector<Segment> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({ring[i], ring[(i + 1) % n]});
  for (std::size_t i = 0; i < n; ++i) {
    if (edges[i].p == edges[i].q) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (segments_intersect(edges[i], edges[j], IntersectMode::Any)) return false;
        continue;
      }
      // Adjacent: the shared vertex is their only common point.
      if (segments_overlap(edges[i], edges[j])) return false;
      const Point& far_i = (j == i + 1) ? edges[i].p : edges[i].q;
      const Point& far_j = (j == i + 1) ? edges[j].q : edges[j].p;
      if (far_i == far_j || on_segment(edges[j], far_i) || on_segment(edges[i], far_j)) return false;
    }
  }
  return true;
}

/// A simple polygon with vertices in counterclockwise order.
class Polygon {
 public:
  struct Unchecked {};

  Polygon() = default;

  explicit Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3)
      throw Error(ErrorCode::InvalidPolygon, "a polygon needs at least 3 vertices");
    if (!is_simple(vertices_)) throw Error(ErrorCode::InvalidPolygon, "boundary is not simple");
    if (sgn(signed_area2(vertices_)) <= 0)
      throw Error(ErrorCode::InvalidPolygon, "vertices must be in counterclockwise order");
  }

  /// For callers that construct polygons whose validity already follows from
  /// the construction (split products).
  Polygon(std::vector<Point> vertices, Unchecked) : vertices_(std::move(vertices)) {}

  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const std::vector<Point>& vertices() const { return vertices_; }

  std::size_t next(std::size_t i) const { return (i + 1) % size(); }
  std::size_t prev(std::size_t i) const { return (i + size() - 1) % size(); }

  /// Edge i runs from vertex i to vertex i+1.
  Segment edge(std::size_t i) const { return {vertices_[i], vertices_[next(i)]}; }

  Coord area() const { return signed_area2(vertices_) / 2; }

  std::optional<std::size_t> index_of(const Point& p) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (vertices_[i] == p) return i;
    return std::nullopt;
  }

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point> vertices_;
};

struct VertexClassification {
  std::vector<std::size_t> reflex;
  std::vector<std::size_t> convex;
  std::vector<bool> is_reflex;
};

/// A vertex is reflex iff the boundary turns clockwise there. Flat vertices
/// count as convex.
inline VertexClassification classify_vertices(const Polygon& p) {
  VertexClassification c;
  c.is_reflex.assign(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (orient(p[p.prev(i)], p[i], p[p.next(i)]) == Orientation::CW) {
      c.reflex.push_back(i);
      c.is_reflex[i] = true;
    } else {
      c.convex.push_back(i);
    }
  }
  return c;
}

inline std::size_t reflex_count(const Polygon& p) { return classify_vertices(p).reflex.size(); }

inline bool is_convex(const Polygon& p) { return reflex_count(p) == 0; }

/// Visibility between two points of the closed polygon region. The open
/// segment ab must avoid the boundary entirely; touching a vertex or sliding
/// along an edge blocks, except when ab is itself a boundary edge.
inline bool sees(const Polygon& p, const Point& a, const Point& b) {
  if (a == b) return true;
  const Segment ab{a, b};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Segment e = p.edge(i);
    if ((e.p == a && e.q == b) || (e.p == b && e.q == a)) return true;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Segment e = p.edge(i);
    if (segments_intersect(ab, e, IntersectMode::Proper)) return false;
    if (segments_overlap(ab, e)) return false;
    if (in_segment_interior(ab, p[i])) return false;
  }
  return locate_point(p.vertices(), midpoint(a, b)) == Location::Inside;
}

struct RayHit {
  Point q;               ///< first boundary point hit, interior to an edge
  std::size_t edge = 0;  ///< index of the edge containing q
  Point direction;       ///< the ray direction used
};

namespace detail {

struct FirstHit {
  Coord t;
  Point point;
  std::size_t edge = 0;
  bool at_vertex = false;
};

/// First boundary contact of the ray origin + t*dir, t > 0, ignoring the two
/// edges incident to vertex `origin_index`.
inline std::optional<FirstHit> first_hit(const Polygon& p, std::size_t origin_index, const Point& dir) {
  const Point& r = p[origin_index];
  std::optional<FirstHit> best;
  auto offer = [&](const Coord& t, std::size_t edge, bool vertex) {
    if (!best || t < best->t) {
      best = FirstHit{t, r + t * dir, edge, vertex};
    } else if (t == best->t) {
      best->at_vertex = true;  // two edges meet at this point
    }
  };
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == origin_index || p.next(j) == origin_index) continue;
    const Point& a = p[j];
    const Point& b = p[p.next(j)];
    const Point ab = b - a;
    const Coord denom = cross(dir, ab);
    if (sgn(denom) == 0) {
      if (sgn(cross(a - r, dir)) != 0) continue;
      const Coord dd = dot(dir, dir);
      for (const Point* v : {&a, &b}) {
        Coord t = dot(*v - r, dir) / dd;
        if (sgn(t) > 0) offer(t, j, true);
      }
      continue;
    }
    const Coord t = cross(a - r, ab) / denom;
    const Coord s = cross(a - r, dir) / denom;
    if (sgn(t) <= 0 || sgn(s) < 0 || s > 1) continue;
    offer(t, j, sgn(s) == 0 || s == 1);
  }
  return best;
}

}  // namespace detail

/// Shoots a ray from reflex vertex `r` into the polygon so that both angles
/// at r become convex, returning the first boundary point hit.
///
/// Directions are positive combinations -(s*u + t*w) of the max-norm scaled
/// edge vectors u (to the next vertex) and w (to the previous vertex); every
/// such direction lies strictly inside the feasible cone. Starting from
/// s = t = 1, the weights are perturbed with a shrinking step until the hit
/// lands in the interior of an edge.
inline RayHit shoot_ray(const Polygon& p, std::size_t r) {
  const Point& v = p[r];
  Point to_next = p[p.next(r)] - v;
  Point to_prev = p[p.prev(r)] - v;
  if (sgn(cross(to_next, to_prev)) >= 0)
    throw Error(ErrorCode::InvalidChord, "shoot_ray needs a reflex vertex");
  to_next = Coord(1) / max_norm(to_next) * to_next;
  to_prev = Coord(1) / max_norm(to_prev) * to_prev;

  auto attempt = [&](const Coord& s, const Coord& t) -> std::optional<RayHit> {
    Point dir = -(s * to_next + t * to_prev);
    auto hit = detail::first_hit(p, r, dir);
    if (!hit || hit->at_vertex) return std::nullopt;
    return RayHit{hit->point, hit->edge, dir};
  };

  if (auto hit = attempt(1, 1)) return *hit;
  Coord step(1, 10);
  for (int round = 0; round < 256; ++round) {
    if (auto hit = attempt(1, 1 - step)) return *hit;
    if (auto hit = attempt(1 - step, 1)) return *hit;
    step /= 2;
  }
  throw Error(ErrorCode::InvalidChord, "no ray direction avoids the polygon vertices");
}

struct SplitResult {
  Polygon p1;  ///< q, v_{e+1}, ..., r
  Polygon p2;  ///< q, r, v_{r+1}, ..., v_e
  std::size_t r_index_in_p1 = 0;
  std::size_t r_index_in_p2 = 0;
  Point q_point;
  /// Child vertex index -> parent vertex index (nullopt for q).
  std::vector<std::optional<std::size_t>> parent_of_p1;
  std::vector<std::optional<std::size_t>> parent_of_p2;
};

/// Cuts the polygon along the chord from vertex r to the point q on edge
/// `edge_index`.
inline SplitResult split(const Polygon& p, std::size_t r, const Point& q, std::size_t edge_index) {
  const std::size_t n = p.size();
  if (r >= n || edge_index >= n) throw Error(ErrorCode::InvalidChord, "index out of range");
  const Segment host = p.edge(edge_index);
  if (!in_segment_interior(host, q))
    throw Error(ErrorCode::InvalidChord, "q is not interior to the given edge");
  if (edge_index == r || p.next(edge_index) == r)
    throw Error(ErrorCode::InvalidChord, "chord runs along an edge incident to r");
  const Segment chord{p[r], q};
  for (std::size_t i = 0; i < n; ++i) {
    const Segment e = p.edge(i);
    if (i == edge_index) {
      if (on_segment(chord, e.p) || on_segment(chord, e.q) || segments_overlap(chord, e))
        throw Error(ErrorCode::InvalidChord, "chord touches the host edge twice");
      continue;
    }
    if (i == r || p.next(i) == r) {
      const Point& far = (i == r) ? e.q : e.p;
      if (on_segment(chord, far) || on_segment(e, q))
        throw Error(ErrorCode::InvalidChord, "chord runs along an edge incident to r");
      continue;
    }
    if (segments_intersect(chord, e, IntersectMode::Any))
      throw Error(ErrorCode::InvalidChord, "chord meets the boundary");
  }
  if (locate_point(p.vertices(), midpoint(p[r], q)) != Location::Inside)
    throw Error(ErrorCode::InvalidChord, "chord lies outside the polygon");

  SplitResult out;
  out.q_point = q;
  std::vector<Point> v1, v2;
  v1.push_back(q);
  out.parent_of_p1.push_back(std::nullopt);
  for (std::size_t i = p.next(edge_index);; i = p.next(i)) {
    v1.push_back(p[i]);
    out.parent_of_p1.push_back(i);
    if (i == r) break;
  }
  out.r_index_in_p1 = v1.size() - 1;
  v2.push_back(q);
  out.parent_of_p2.push_back(std::nullopt);
  for (std::size_t i = r;; i = p.next(i)) {
    v2.push_back(p[i]);
    out.parent_of_p2.push_back(i);
    if (i == edge_index) break;
  }
  out.r_index_in_p2 = 1;
  out.p1 = Polygon(std::move(v1), Polygon::Unchecked{});
  out.p2 = Polygon(std::move(v2), Polygon::Unchecked{});
  return out;
}

}  // namespace degtree
