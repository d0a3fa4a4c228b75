#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "degtree/geom.hpp"

namespace degtree {

using Edge = std::pair<std::size_t, std::size_t>;

inline Edge make_edge(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Straight-line graph: points plus undirected edges given as index pairs.
struct GeomTree {
  std::vector<Point> points;
  std::vector<Edge> edges;

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(points.size(), 0);
    for (auto [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool has_edge(std::size_t a, std::size_t b) const {
    const Edge e = make_edge(a, b);
    return std::find(edges.begin(), edges.end(), e) != edges.end();
  }

  std::optional<std::size_t> index_of(const Point& p) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i] == p) return i;
    return std::nullopt;
  }

  /// Edges sorted and oriented (min, max) so equal trees compare equal.
  void normalize() {
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
  }

  Segment segment(const Edge& e) const { return {points[e.first], points[e.second]}; }
};

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  /// Returns false if a and b were already connected.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Drops the given vertices (and their incident edges), renumbering the rest.
inline GeomTree remove_vertices(const GeomTree& t, const std::vector<std::size_t>& doomed) {
  std::vector<std::optional<std::size_t>> renum(t.points.size());
  GeomTree out;
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    if (std::find(doomed.begin(), doomed.end(), i) != doomed.end()) continue;
    renum[i] = out.points.size();
    out.points.push_back(t.points[i]);
  }
  for (auto [a, b] : t.edges)
    if (renum[a] && renum[b]) out.edges.push_back(make_edge(*renum[a], *renum[b]));
  out.normalize();
  return out;
}

}  // namespace degtree
