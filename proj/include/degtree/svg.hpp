#pragma once

// SVG 1.1 drawings of results. Purely presentational.

#include <algorithm>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "degtree/geom.hpp"
#include "degtree/polygon.hpp"
#include "degtree/tree.hpp"

namespace degtree::svg {

namespace detail {

class Canvas {
 public:
  explicit Canvas(std::span<const Point> extent) {
    for (const auto& p : extent) {
      const double x = p.x.get_d(), y = p.y.get_d();
      x0_ = std::min(x0_, x);
      x1_ = std::max(x1_, x);
      y0_ = std::min(y0_, y);
      y1_ = std::max(y1_, y);
    }
    const double span = std::max({x1_ - x0_, y1_ - y0_, 1e-9});
    pad_ = span * 0.05;
    unit_ = span / 400;
  }

  double unit() const { return unit_; }

  std::string xy(const Point& p) const {
    // Flip y so the drawing has the usual orientation.
    return num(p.x.get_d()) + "," + num(y0_ + y1_ - p.y.get_d());
  }

  std::string open() const {
    std::ostringstream os;
    const double w = x1_ - x0_ + 2 * pad_, h = y1_ - y0_ + 2 * pad_;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\""
       << num(800 * h / w) << "\" viewBox=\"" << num(x0_ - pad_) << ' ' << num(y0_ - pad_) << ' ' << num(w) << ' '
       << num(h) << "\">\n";
    return os.str();
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  double x0_ = 1e300, x1_ = -1e300, y0_ = 1e300, y1_ = -1e300;
  double pad_ = 0, unit_ = 1;
};

inline std::string polygon_element(const Canvas& c, std::span<const Point> ring, const std::string& style) {
  std::string pts;
  for (const auto& p : ring) pts += c.xy(p) + " ";
  return "<polygon points=\"" + pts + "\" style=\"" + style + "\"/>\n";
}

inline std::string line_element(const Canvas& c, const Point& a, const Point& b, const std::string& style) {
  const auto pa = c.xy(a), pb = c.xy(b);
  const auto ca = pa.find(','), cb = pb.find(',');
  return "<line x1=\"" + pa.substr(0, ca) + "\" y1=\"" + pa.substr(ca + 1) + "\" x2=\"" + pb.substr(0, cb) +
         "\" y2=\"" + pb.substr(cb + 1) + "\" style=\"" + style + "\"/>\n";
}

inline std::string dot_element(const Canvas& c, const Point& p, double r, const std::string& fill) {
  const auto s = c.xy(p);
  const auto k = s.find(',');
  return "<circle cx=\"" + s.substr(0, k) + "\" cy=\"" + s.substr(k + 1) + "\" r=\"" + Canvas::num(r) +
         "\" fill=\"" + fill + "\"/>\n";
}

}  // namespace detail

/// Polygon in grey, tree edges in blue; reflex vertices red, marks green.
inline std::string render_tree(const Polygon& p, const GeomTree& t, std::span<const Point> marks) {
  detail::Canvas c(p.vertices());
  const double u = c.unit();
  std::string out = c.open();
  out += detail::polygon_element(c, p.vertices(),
                                 "fill:#eeeeee;stroke:#555555;stroke-width:" + detail::Canvas::num(u));
  for (const auto& e : t.edges)
    out += detail::line_element(c, t.points[e.first], t.points[e.second],
                                "stroke:#1f5fbf;stroke-width:" + detail::Canvas::num(1.5 * u));
  const auto cls = classify_vertices(p);
  for (const auto& q : t.points) {
    const auto v = p.index_of(q);
    const bool mark = std::find(marks.begin(), marks.end(), q) != marks.end();
    const std::string fill = mark ? "#2a9d3a" : (v && cls.is_reflex[*v] ? "#c0392b" : "#222222");
    out += detail::dot_element(c, q, 3 * u, fill);
  }
  return out + "</svg>\n";
}

/// Segments bold, tree edges dashed; the optional polygon (for instance the
/// thickened free region) is drawn underneath.
inline std::string render_encompassing(std::span<const Segment> segments, const GeomTree& t,
                                       const Polygon* backdrop = nullptr) {
  std::vector<Point> extent;
  if (backdrop) extent = backdrop->vertices();
  for (const auto& s : segments) {
    extent.push_back(s.p);
    extent.push_back(s.q);
  }
  detail::Canvas c(extent);
  const double u = c.unit();
  std::string out = c.open();
  if (backdrop)
    out += detail::polygon_element(c, backdrop->vertices(),
                                   "fill:#e4e4e4;stroke:#999999;stroke-width:" + detail::Canvas::num(0.5 * u));
  for (const auto& e : t.edges)
    out += detail::line_element(c, t.points[e.first], t.points[e.second],
                                "stroke:#1f5fbf;stroke-width:" + detail::Canvas::num(1.2 * u) +
                                    ";stroke-dasharray:" + detail::Canvas::num(4 * u) + "," + detail::Canvas::num(3 * u));
  for (const auto& s : segments)
    out += detail::line_element(c, s.p, s.q, "stroke:#000000;stroke-linecap:round;stroke-width:" + detail::Canvas::num(3 * u));
  for (const auto& p : t.points) out += detail::dot_element(c, p, 2.5 * u, "#000000");
  return out + "</svg>\n";
}

}  // namespace degtree::svg
