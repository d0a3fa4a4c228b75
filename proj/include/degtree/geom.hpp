#pragma once

// Exact rational geometry: coordinates are GMP rationals, so every predicate
// below is decided without rounding.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "degtree/error.hpp"

namespace degtree {

using Coord = mpq_class;

struct Point {
  Coord x;
  Coord y;

  Point() = default;
  Point(Coord x_, Coord y_) : x(std::move(x_)), y(std::move(y_)) {
    x.canonicalize();
    y.canonicalize();
  }
  Point(long x_, long y_) : x(x_), y(y_) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

  /// Lexicographic (x, then y).
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (int c = cmp(a.x, b.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(a.y, b.y); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const Coord& s, const Point& a) { return {s * a.x, s * a.y}; }
  friend Point operator-(const Point& a) { return {-a.x, -a.y}; }

  friend std::ostream& operator<<(std::ostream& os, const Point& p) {
    return os << '(' << p.x.get_str() << ", " << p.y.get_str() << ')';
  }
};

struct Segment {
  Point p;
  Point q;

  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

inline Coord cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Coord dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

/// Sign of (b - a) x (c - a).
inline Orientation orient(const Point& a, const Point& b, const Point& c) {
  const Coord det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  const int s = sgn(det);
  return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::Collinear);
}

inline int orient_sign(const Point& a, const Point& b, const Point& c) {
  return static_cast<int>(orient(a, b, c));
}

/// Closed-segment membership for a point already known to be collinear.
inline bool in_box(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool on_segment(const Segment& s, const Point& p) {
  return orient(s.p, s.q, p) == Orientation::Collinear && in_box(s.p, s.q, p);
}

/// Point on the segment other than its endpoints.
inline bool in_segment_interior(const Segment& s, const Point& p) {
  return p != s.p && p != s.q && on_segment(s, p);
}

enum class IntersectMode {
  Proper,  ///< interiors cross transversally at a single point
  Any,     ///< closed segments share at least one point
};

inline bool boxes_overlap(const Segment& s1, const Segment& s2) {
  return std::max(std::min(s1.p.x, s1.q.x), std::min(s2.p.x, s2.q.x)) <=
             std::min(std::max(s1.p.x, s1.q.x), std::max(s2.p.x, s2.q.x)) &&
         std::max(std::min(s1.p.y, s1.q.y), std::min(s2.p.y, s2.q.y)) <=
             std::min(std::max(s1.p.y, s1.q.y), std::max(s2.p.y, s2.q.y));
}

inline bool segments_intersect(const Segment& s1, const Segment& s2, IntersectMode mode) {
  if (!boxes_overlap(s1, s2)) return false;
  const int o1 = orient_sign(s1.p, s1.q, s2.p);
  const int o2 = orient_sign(s1.p, s1.q, s2.q);
  const int o3 = orient_sign(s2.p, s2.q, s1.p);
  const int o4 = orient_sign(s2.p, s2.q, s1.q);
  if (mode == IntersectMode::Proper) return o1 * o2 < 0 && o3 * o4 < 0;
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && in_box(s1.p, s1.q, s2.p)) || (o2 == 0 && in_box(s1.p, s1.q, s2.q)) ||
         (o3 == 0 && in_box(s2.p, s2.q, s1.p)) || (o4 == 0 && in_box(s2.p, s2.q, s1.q));
}

/// True when the two segments are collinear and share more than one point.
inline bool segments_overlap(const Segment& s1, const Segment& s2) {
  if (orient(s1.p, s1.q, s2.p) != Orientation::Collinear ||
      orient(s1.p, s1.q, s2.q) != Orientation::Collinear)
    return false;
  const Point d = s1.q - s1.p;
  Coord lo1 = 0, hi1 = dot(d, d);
  Coord a = dot(s2.p - s1.p, d), b = dot(s2.q - s1.p, d);
  if (a > b) std::swap(a, b);
  return std::max(lo1, a) < std::min(hi1, b);
}

/// Intersection of the supporting lines p1p2 and q1q2; nullopt if parallel.
inline std::optional<Point> line_intersection(const Point& p1, const Point& p2, const Point& q1,
                                              const Point& q2) {
  const Point r = p2 - p1;
  const Point s = q2 - q1;
  const Coord denom = cross(r, s);
  if (sgn(denom) == 0) return std::nullopt;
  const Coord t = cross(q1 - p1, s) / denom;
  return p1 + t * r;
}

inline Point intersection_point(const Segment& s1, const Segment& s2) {
  if (!segments_intersect(s1, s2, IntersectMode::Any))
    throw Error(ErrorCode::NoIntersection, "segments do not meet");
  if (segments_overlap(s1, s2))
    throw Error(ErrorCode::OverlapNotPoint, "segments overlap along a sub-segment");
  if (auto p = line_intersection(s1.p, s1.q, s2.p, s2.q)) return *p;
  // Collinear, touching at a single endpoint.
  for (const Point& c : {s2.p, s2.q})
    if (on_segment(s1, c)) return c;
  return on_segment(s2, s1.p) ? s1.p : s1.q;
}

inline Coord squared_length(const Point& v) { return dot(v, v); }

inline Coord squared_distance(const Point& p, const Segment& s) {
  const Point d = s.q - s.p;
  const Coord len2 = squared_length(d);
  if (sgn(len2) == 0) return squared_length(p - s.p);
  Coord t = dot(p - s.p, d) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return squared_length(p - (s.p + t * d));
}

/// Strict convex hull (collinear boundary points dropped), counterclockwise,
/// starting at the lexicographically smallest point.
inline std::vector<Point> convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) != Orientation::CCW) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) != Orientation::CCW) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Whether p lies on the boundary of the convex hull cycle `hull`.
inline bool on_hull_boundary(std::span<const Point> hull, const Point& p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return hull[0] == p;
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (on_segment({hull[i], hull[(i + 1) % hull.size()]}, p)) return true;
  return false;
}

enum class Location { Outside, Boundary, Inside };

/// Exact point location against a closed ring (either orientation).
inline Location locate_point(std::span<const Point> ring, const Point& p) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if (on_segment({a, b}, p)) return Location::Boundary;
    // Half-open crossing rule on the horizontal ray to +x.
    if ((a.y > p.y) != (b.y > p.y)) {
      const int o = orient_sign(a, b, p);
      if ((b.y > a.y) ? o > 0 : o < 0) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

inline Coord signed_area2(std::span<const Point> ring) {
  Coord acc = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) acc += cross(ring[i], ring[(i + 1) % ring.size()]);
  return acc;
}

inline Point midpoint(const Point& a, const Point& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

/// Largest |component|, used to scale direction vectors without square roots.
inline Coord max_norm(const Point& v) {
  Coord ax = abs(v.x);
  Coord ay = abs(v.y);
  return ax < ay ? ay : ax;
}

/// Whether any three of the points are collinear; reports the first triple.
inline std::optional<std::array<std::size_t, 3>> find_collinear_triple(std::span<const Point> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (orient(pts[i], pts[j], pts[k]) == Orientation::Collinear) return std::array{i, j, k};
  return std::nullopt;
}

}  // namespace degtree
