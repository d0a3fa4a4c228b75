#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "degtree/error.hpp"
#include "degtree/geom.hpp"
#include "degtree/polygon.hpp"
#include "degtree/tree_builder.hpp"

namespace degtree::gen {

/// mt19937_64 is fully specified by the standard; the distributions are not,
/// so draws are derived from raw engine output to keep files identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct TightInstance {
  MarkedInstance instance;
  std::vector<std::size_t> reflex;  ///< w^r_2, w^r_4, ..., w^r_2n
  std::vector<std::size_t> tips;    ///< w^c_2, w^c_4, ..., w^c_2n
};

namespace detail {

/// Point on the unit circle at angle theta, from a rational approximation of
/// tan(theta / 2); the result lies exactly on the circle.
inline Point rational_circle_point(double theta) {
  const double t = std::tan(theta / 2);
  const Coord tq(static_cast<long>(std::llround(t * 1e6)), 1000000);
  const Coord den = 1 + tq * tq;
  return {(1 - tq * tq) / den, 2 * tq / den};
}

inline bool tight_polygon_valid(const Polygon& p, const std::vector<std::size_t>& reflex,
                                const std::vector<std::size_t>& tips,
                                const std::vector<std::size_t>& tip_partners) {
  const auto cls = classify_vertices(p);
  if (cls.reflex != reflex) return false;
  for (std::size_t s = 0; s < tips.size(); ++s) {
    const Point& c = p[tips[s]];
    for (std::size_t v = 0; v < p.size(); ++v) {
      if (v == tips[s]) continue;
      const bool allowed = v == reflex[s] || v == tip_partners[s];
      if (sees(p, c, p[v]) != allowed) return false;
    }
  }
  return true;
}

}  // namespace detail

/// The spiked regular (2n+2)-gon on which every valid tree must give each of
/// the n reflex vertices degree exactly 3. Vertex w_k (k = 1..2n+2) sits on a
/// rational point of the unit circle; each even w_k with k <= 2n is replaced
/// by a spike tip w^c_k and a reflex vertex w^r_k pulled slightly inward, and
/// the spike is shaped so that w^c_k sees only w^r_k and w_{k-1}.
inline TightInstance gen_tight(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "gen_tight needs n >= 1");
  const std::size_t m = 2 * n + 2;
  std::vector<Point> w(m);  // w[k] is w_{k+1}
  for (std::size_t k = 0; k < m; ++k)
    w[k] = detail::rational_circle_point(2 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
                                         static_cast<double>(m));

  Coord reach(1, 2);
  Coord offset(1, 20);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Point> verts;
    TightInstance out;
    std::vector<std::size_t> partners;
    std::vector<std::size_t> a;
    for (std::size_t k = 0; k < m; ++k) {
      const bool spiked = (k % 2 == 1) && k + 1 <= 2 * n;
      if (!spiked) {
        if (k + 1 >= 2 * n + 1) a.push_back(verts.size());
        verts.push_back(w[k]);
        continue;
      }
      const Point& prev = w[k - 1];
      const Point& next = w[(k + 1) % m];
      const Point inner = w[k] + Coord(1, 4) * (midpoint(prev, next) - w[k]);
      const Point d = inner - prev;
      const Point tip = inner + reach * d + offset * Point(d.y, -d.x);
      partners.push_back(verts.size() - 1);
      out.tips.push_back(verts.size());
      a.push_back(verts.size());
      verts.push_back(tip);
      out.reflex.push_back(verts.size());
      a.push_back(verts.size());
      verts.push_back(inner);
    }
    Polygon p;
    try {
      p = Polygon(verts);
    } catch (const Error&) {
      offset /= 2;
      continue;
    }
    if (detail::tight_polygon_valid(p, out.reflex, out.tips, partners)) {
      normalize_a_set(a);
      out.instance.polygon = std::move(p);
      out.instance.a_set = std::move(a);
      out.instance.v1 = verts.size() - 2;  // w_{2n+1}
      out.instance.v2 = verts.size() - 1;  // w_{2n+2}
      return out;
    }
    if (attempt % 2 == 0) offset /= 2;
    else reach /= 2;
  }
  throw Error(ErrorCode::GenerationFailed, "could not shape spikes for n = " + std::to_string(n));
}

/// Random simple polygon: random lattice points in general position, a
/// random cyclic order, then 2-opt moves (reverse the chain between two
/// crossing edges) until no two edges cross. A holds every reflex vertex,
/// the two lexicographic extremes, and each other convex vertex with
/// probability 1/2; the marks are two random convex members of A.
inline MarkedInstance gen_random_polygon(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::InvalidInput, "gen_random_polygon needs n >= 3");
  Rng rng(seed);
  const long range = static_cast<long>(std::max<std::size_t>(100, 20 * n));
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<Point> pts;
    int rejections = 0;
    while (pts.size() < n && rejections < 100000) {
      Point cand(rng.between(0, range), rng.between(0, range));
      bool ok = true;
      for (std::size_t i = 0; i < pts.size() && ok; ++i) {
        if (pts[i] == cand) ok = false;
        for (std::size_t j = i + 1; j < pts.size() && ok; ++j)
          if (orient(pts[i], pts[j], cand) == Orientation::Collinear) ok = false;
      }
      if (ok) pts.push_back(std::move(cand));
      else ++rejections;
    }
    if (pts.size() < n) continue;
    rng.shuffle(pts);

    bool crossed = true;
    std::size_t moves = 0;
    while (crossed && moves < 200000) {
      crossed = false;
      for (std::size_t i = 0; i < n && !crossed; ++i) {
        for (std::size_t j = i + 2; j < n && !crossed; ++j) {
          if (i == 0 && j == n - 1) continue;
          const Segment ei{pts[i], pts[i + 1]};
          const Segment ej{pts[j], pts[(j + 1) % n]};
          if (segments_intersect(ei, ej, IntersectMode::Any)) {
            std::reverse(pts.begin() + static_cast<long>(i) + 1, pts.begin() + static_cast<long>(j) + 1);
            crossed = true;
            ++moves;
          }
        }
      }
    }
    if (crossed || !is_simple(pts)) continue;
    if (sgn(signed_area2(pts)) < 0) std::reverse(pts.begin(), pts.end());

    MarkedInstance inst;
    inst.polygon = Polygon(pts);
    const auto cls = classify_vertices(inst.polygon);
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pts[i] < pts[lo]) lo = i;
      if (pts[hi] < pts[i]) hi = i;
    }
    std::vector<std::size_t> convex_in_a;
    for (std::size_t i = 0; i < n; ++i) {
      const bool take = cls.is_reflex[i] || i == lo || i == hi || rng.coin();
      if (!take) continue;
      inst.a_set.push_back(i);
      if (!cls.is_reflex[i]) convex_in_a.push_back(i);
    }
    const std::size_t first = rng.below(convex_in_a.size());
    std::size_t second = rng.below(convex_in_a.size() - 1);
    if (second >= first) ++second;
    inst.v1 = convex_in_a[first];
    inst.v2 = convex_in_a[second];
    return inst;
  }
  throw Error(ErrorCode::GenerationFailed, "could not produce a simple polygon");
}

/// Rejection-sampled pairwise disjoint segments with no three endpoints on a
/// common line.
inline std::vector<Segment> gen_random_segments(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "gen_random_segments needs n >= 1");
  Rng rng(seed);
  const long range = static_cast<long>(std::max<std::size_t>(200, 60 * n));
  const long max_len = std::max<long>(40, range / 6);
  std::vector<Segment> segs;
  std::vector<Point> endpoints;
  int rejections = 0;
  while (segs.size() < n) {
    if (++rejections > 200000)
      throw Error(ErrorCode::GenerationFailed, "could not place " + std::to_string(n) + " segments");
    Point p(rng.between(0, range), rng.between(0, range));
    Point q(p.x + rng.between(-max_len, max_len), p.y + rng.between(-max_len, max_len));
    if (p == q) continue;
    const Segment s{p, q};
    bool ok = true;
    for (const auto& t : segs)
      if (segments_intersect(s, t, IntersectMode::Any)) ok = false;
    for (std::size_t i = 0; i < endpoints.size() && ok; ++i) {
      if (orient(endpoints[i], p, q) == Orientation::Collinear) ok = false;
      for (std::size_t j = i + 1; j < endpoints.size() && ok; ++j)
        if (orient(endpoints[i], endpoints[j], p) == Orientation::Collinear ||
            orient(endpoints[i], endpoints[j], q) == Orientation::Collinear)
          ok = false;
    }
    if (!ok) continue;
    segs.push_back(s);
    endpoints.push_back(p);
    endpoints.push_back(q);
  }
  return segs;
}

}  // namespace degtree::gen
