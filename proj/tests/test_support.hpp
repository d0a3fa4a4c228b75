#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "degtree/geom.hpp"
#include "degtree/polygon.hpp"

namespace degtree::testing {

inline Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline Polygon l_polygon() { return Polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

inline std::vector<std::size_t> all_indices(const Polygon& p) {
  std::vector<std::size_t> v(p.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

/// Strictly convex polygon: hull of random lattice points.
inline Polygon random_convex_polygon(std::mt19937_64& rng, std::size_t min_vertices = 3) {
  std::uniform_int_distribution<long> coord(-1000, 1000);
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i < 40; ++i) pts.emplace_back(coord(rng), coord(rng));
    auto hull = convex_hull(pts);
    if (hull.size() >= min_vertices) return Polygon(hull);
  }
}

}  // namespace degtree::testing
