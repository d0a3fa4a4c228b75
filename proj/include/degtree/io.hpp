#pragma once

// JSON instance and result files. Coordinates are written as exact decimal
// strings when the rational has a terminating expansion, otherwise "p/q";
// both forms (and plain JSON integers) are accepted on input.

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "degtree/error.hpp"
#include "degtree/geom.hpp"
#include "degtree/verify.hpp"

namespace degtree::io {

using Json = nlohmann::json;

inline std::string format_coord(const Coord& v) {
  mpz_class den = v.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return v.get_str();
  const unsigned digits = std::max(twos, fives);
  if (digits == 0) return v.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpz_class scaled = v.get_num() * scale / v.get_den();
  std::string s = mpz_class(abs(scaled)).get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (sgn(scaled) < 0 ? "-" : "") + s;
}

/// Parses "12", "-3.25", "7/3" or a JSON integer.
inline Coord parse_coord(const Json& j) {
  if (j.is_number_integer()) return Coord(mpz_class(std::to_string(j.get<long long>()), 10));
  if (j.is_number()) throw Error(ErrorCode::ParseError, "write non-integer coordinates as strings, e.g. \"0.1\" or \"1/3\"");
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "coordinate must be a string or integer");
  const std::string s = j.get<std::string>();
  auto bad = [&] { return Error(ErrorCode::ParseError, "bad coordinate \"" + s + "\""); };
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_mpz = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t, 10);
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
    const mpz_class d = to_mpz(den);
    if (d == 0) throw bad();
    Coord c(to_mpz(num), d);
    c.canonicalize();
    return c;
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole)) throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const mpz_class magnitude = abs(to_mpz(whole)) * scale + mpz_class(frac, 10);
    Coord c(neg ? mpz_class(-magnitude) : magnitude, scale);
    c.canonicalize();
    return c;
  }
  if (!is_int(s)) throw bad();
  return Coord(to_mpz(s));
}

inline Json point_json(const Point& p) { return Json::array({format_coord(p.x), format_coord(p.y)}); }

inline Point parse_point(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "point must be [x, y]");
  return {parse_coord(j[0]), parse_coord(j[1])};
}

inline std::size_t parse_index(const Json& j, std::size_t bound, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || static_cast<std::size_t>(j.get<long long>()) >= bound)
    throw Error(ErrorCode::ParseError, what + " out of range");
  return static_cast<std::size_t>(j.get<long long>());
}

enum class InstanceKind { Polygon, Segments };

struct InstanceFile {
  InstanceKind kind = InstanceKind::Polygon;
  std::vector<Point> polygon;
  std::vector<std::size_t> a_indices;  ///< empty means every vertex
  std::optional<std::size_t> v1, v2;
  std::vector<Segment> segments;
  std::optional<std::uint64_t> seed;
  std::optional<Coord> epsilon, margin;
};

inline Json to_json(const InstanceFile& f) {
  Json j;
  if (f.kind == InstanceKind::Polygon) {
    j["kind"] = "polygon-instance";
    j["polygon"] = Json::array();
    for (const auto& p : f.polygon) j["polygon"].push_back(point_json(p));
    j["a_indices"] = f.a_indices;
    if (f.v1) j["v1"] = *f.v1;
    if (f.v2) j["v2"] = *f.v2;
  } else {
    j["kind"] = "segments-instance";
    j["segments"] = Json::array();
    for (const auto& s : f.segments) j["segments"].push_back(Json::array({point_json(s.p), point_json(s.q)}));
  }
  if (f.seed) j["seed"] = *f.seed;
  if (f.epsilon) j["epsilon"] = format_coord(*f.epsilon);
  if (f.margin) j["margin"] = format_coord(*f.margin);
  return j;
}

inline InstanceFile instance_from_json_unguarded(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "instance must be a JSON object");
  InstanceFile f;
  const std::string kind = j.value("kind", "");
  if (kind == "polygon-instance") {
    f.kind = InstanceKind::Polygon;
    if (!j.contains("polygon") || j.contains("segments"))
      throw Error(ErrorCode::ParseError, "polygon-instance needs \"polygon\" and no \"segments\"");
    for (const auto& p : j.at("polygon")) f.polygon.push_back(parse_point(p));
    if (j.contains("a_indices"))
      for (const auto& i : j.at("a_indices")) f.a_indices.push_back(parse_index(i, f.polygon.size(), "a_indices entry"));
    if (j.contains("v1") && !j.at("v1").is_null()) f.v1 = parse_index(j.at("v1"), f.polygon.size(), "v1");
    if (j.contains("v2") && !j.at("v2").is_null()) f.v2 = parse_index(j.at("v2"), f.polygon.size(), "v2");
  } else if (kind == "segments-instance") {
    f.kind = InstanceKind::Segments;
    if (!j.contains("segments") || j.contains("polygon"))
      throw Error(ErrorCode::ParseError, "segments-instance needs \"segments\" and no \"polygon\"");
    for (const auto& s : j.at("segments")) {
      if (!s.is_array() || s.size() != 2) throw Error(ErrorCode::ParseError, "segment must be [[x1,y1],[x2,y2]]");
      f.segments.push_back({parse_point(s[0]), parse_point(s[1])});
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown kind \"" + kind + "\"");
  }
  if (j.contains("seed")) f.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("epsilon")) f.epsilon = parse_coord(j.at("epsilon"));
  if (j.contains("margin")) f.margin = parse_coord(j.at("margin"));
  return f;
}

struct VertexInfo {
  std::size_t degree = 0;
  std::string role;  ///< reflex / convex for polygons, tip / extended for segments
  bool mark = false;
};

struct Trace {
  std::vector<std::size_t> extension_order;
  Coord epsilon;
  int retries = 0;
  std::vector<std::optional<Edge>> removed;  ///< per inserted segment, in order
};

struct ResultFile {
  InstanceKind kind = InstanceKind::Polygon;
  GeomTree tree;
  std::vector<VertexInfo> vertices;
  verify::Report report;
  std::optional<Trace> trace;
};

inline Json to_json(const ResultFile& r) {
  Json j;
  j["kind"] = r.kind == InstanceKind::Polygon ? "tree-result" : "encompass-result";
  j["points"] = Json::array();
  for (const auto& p : r.tree.points) j["points"].push_back(point_json(p));
  j["edges"] = Json::array();
  for (auto [a, b] : r.tree.edges) j["edges"].push_back(Json::array({a, b}));
  j["vertices"] = Json::array();
  for (const auto& v : r.vertices) j["vertices"].push_back({{"degree", v.degree}, {"role", v.role}, {"mark", v.mark}});
  j["report"] = Json::array();
  for (const auto& f : r.report.facts) j["report"].push_back({{"name", f.name}, {"pass", f.pass}, {"detail", f.detail}});
  j["ok"] = r.report.ok();
  if (r.trace) {
    Json t;
    t["extension_order"] = r.trace->extension_order;
    t["epsilon"] = format_coord(r.trace->epsilon);
    t["retries"] = r.trace->retries;
    t["removed_edges"] = Json::array();
    for (const auto& e : r.trace->removed)
      t["removed_edges"].push_back(e ? Json::array({e->first, e->second}) : Json(nullptr));
    j["trace"] = t;
  }
  return j;
}

inline ResultFile result_from_json_unguarded(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "result must be a JSON object");
  ResultFile r;
  const std::string kind = j.value("kind", "");
  if (kind == "tree-result") r.kind = InstanceKind::Polygon;
  else if (kind == "encompass-result") r.kind = InstanceKind::Segments;
  else throw Error(ErrorCode::ParseError, "unknown result kind \"" + kind + "\"");
  for (const auto& p : j.at("points")) r.tree.points.push_back(parse_point(p));
  // Indices are range-checked by the verifier, not here, so that a
  // tampered file is reported as a failed check rather than a parse error.
  for (const auto& e : j.at("edges")) {
    auto index_like = [](const Json& x) { return x.is_number_integer() && x.get<long long>() >= 0; };
    if (!e.is_array() || e.size() != 2 || !index_like(e[0]) || !index_like(e[1]))
      throw Error(ErrorCode::ParseError, "edge must be [i, j]");
    r.tree.edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  }
  if (j.contains("vertices"))
    for (const auto& v : j.at("vertices"))
      r.vertices.push_back({v.value("degree", std::size_t{0}), v.value("role", ""), v.value("mark", false)});
  if (j.contains("report"))
    for (const auto& f : j.at("report")) r.report.add(f.value("name", ""), f.value("pass", false), f.value("detail", ""));
  if (j.contains("trace")) {
    const Json& t = j.at("trace");
    Trace tr;
    tr.extension_order = t.value("extension_order", std::vector<std::size_t>{});
    tr.epsilon = parse_coord(t.at("epsilon"));
    tr.retries = t.value("retries", 0);
    for (const auto& e : t.value("removed_edges", Json::array()))
      tr.removed.push_back(e.is_null() ? std::nullopt : std::optional<Edge>(Edge{e[0].get<std::size_t>(), e[1].get<std::size_t>()}));
    r.trace = std::move(tr);
  }
  return r;
}

template <class F>
auto translate_json_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline InstanceFile instance_from_json(const Json& j) {
  return translate_json_errors([&] { return instance_from_json_unguarded(j); });
}

inline ResultFile result_from_json(const Json& j) {
  return translate_json_errors([&] { return result_from_json_unguarded(j); });
}

inline Json read_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace degtree::io
