// degtree: inscribed degree-3 trees in simple polygons and encompassing
// trees of disjoint segments.
//
// Exit status: 0 all checks pass, 1 a check failed or construction gave up,
// 2 the input was rejected.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "degtree/commands.hpp"
#include "degtree/generators.hpp"
#include "degtree/io.hpp"
#include "degtree/svg.hpp"

using namespace degtree;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

void emit_json(const io::Json& j, const std::string& path) { write_text(path, j.dump(2) + "\n"); }

int report_status(const io::ResultFile& r) {
  if (r.report.ok()) {
    std::cerr << "ok: " << r.tree.points.size() << " vertices, " << r.tree.edges.size() << " edges\n";
    return kPass;
  }
  std::cerr << "FAILED:\n" << r.report.failures();
  return kFail;
}

std::vector<Point> mark_points(const io::ResultFile& r) {
  std::vector<Point> m;
  for (std::size_t k = 0; k < r.vertices.size(); ++k)
    if (r.vertices[k].mark) m.push_back(r.tree.points[k]);
  return m;
}

bool input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidPolygon:
    case ErrorCode::InvalidInstance:
    case ErrorCode::TooFewVertices:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-3 inscribed trees and encompassing trees with exact arithmetic"};
  app.require_subcommand(1);

  std::string input, result_path, json_out, svg_out, epsilon_text, margin_text;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  int max_retries = 32;

  auto* tree = app.add_subcommand("tree", "tree on A inside a polygon");
  tree->add_option("input", input, "polygon-instance JSON (- for stdin)")->required();
  tree->add_option("--json", json_out, "write the result here instead of stdout");
  tree->add_option("--svg", svg_out, "draw the result");

  auto* enc = app.add_subcommand("encompass", "degree-3 encompassing tree of segments");
  enc->add_option("input", input, "segments-instance JSON (- for stdin)")->required();
  enc->add_option("--epsilon", epsilon_text, "initial slit width, e.g. 1/64");
  enc->add_option("--margin", margin_text, "bounding box margin");
  enc->add_option("--max-retries", max_retries, "epsilon halvings before giving up")->check(CLI::NonNegativeNumber);
  enc->add_option("--json", json_out, "write the result here instead of stdout");
  enc->add_option("--svg", svg_out, "draw segments, tree and the slit polygon");

  auto* tight = app.add_subcommand("gen-tight", "spiked regular polygon forcing degree 3");
  tight->add_option("n", n, "number of spikes")->required()->check(CLI::PositiveNumber);
  tight->add_option("--json", json_out, "output path");

  auto* gpoly = app.add_subcommand("gen-polygon", "random simple polygon instance");
  gpoly->add_option("n", n, "number of vertices")->required()->check(CLI::Range(3, 100000));
  gpoly->add_option("--seed", seed, "random seed");
  gpoly->add_option("--json", json_out, "output path");

  auto* gseg = app.add_subcommand("gen-segments", "random disjoint segments in general position");
  gseg->add_option("n", n, "number of segments")->required()->check(CLI::PositiveNumber);
  gseg->add_option("--seed", seed, "random seed");
  gseg->add_option("--json", json_out, "output path");

  auto* ver = app.add_subcommand("verify", "re-check a result against its instance");
  ver->add_option("result", result_path, "result JSON")->required();
  ver->add_option("input", input, "instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*tree) {
      const auto inst = io::instance_from_json(io::read_json(input));
      const auto r = degtree::run_tree(inst);
      emit_json(io::to_json(r), json_out);
      if (!svg_out.empty()) write_text(svg_out, svg::render_tree(Polygon(inst.polygon), r.tree, mark_points(r)));
      return report_status(r);
    }
    if (*enc) {
      const auto inst = io::instance_from_json(io::read_json(input));
      EncompassConfig cfg;
      cfg.max_retries = max_retries;
      cfg.epsilon = inst.epsilon;
      cfg.margin = inst.margin;
      if (!epsilon_text.empty()) cfg.epsilon = io::parse_coord(epsilon_text);
      if (!margin_text.empty()) cfg.margin = io::parse_coord(margin_text);
      if (cfg.epsilon && sgn(*cfg.epsilon) <= 0) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
      EncompassResult detail;
      const auto r = degtree::run_encompass(inst, cfg, &detail);
      emit_json(io::to_json(r), json_out);
      if (!svg_out.empty()) write_text(svg_out, svg::render_encompassing(inst.segments, r.tree, &detail.slit.q));
      std::cerr << "epsilon " << io::format_coord(r.trace->epsilon) << ", " << r.trace->retries << " retries\n";
      return report_status(r);
    }
    if (*tight) {
      const auto t = gen::gen_tight(n);
      io::InstanceFile f;
      f.polygon = t.instance.polygon.vertices();
      f.a_indices = t.instance.a_set;
      f.v1 = t.instance.v1;
      f.v2 = t.instance.v2;
      emit_json(io::to_json(f), json_out);
      return kPass;
    }
    if (*gpoly) {
      const auto m = gen::gen_random_polygon(n, seed);
      io::InstanceFile f;
      f.polygon = m.polygon.vertices();
      f.a_indices = m.a_set;
      f.v1 = m.v1;
      f.v2 = m.v2;
      f.seed = seed;
      emit_json(io::to_json(f), json_out);
      return kPass;
    }
    if (*gseg) {
      io::InstanceFile f;
      f.kind = io::InstanceKind::Segments;
      f.segments = gen::gen_random_segments(n, seed);
      f.seed = seed;
      emit_json(io::to_json(f), json_out);
      return kPass;
    }
    if (*ver) {
      const auto r = io::result_from_json(io::read_json(result_path));
      const auto inst = io::instance_from_json(io::read_json(input));
      const auto rep = degtree::verify_result(r, inst);
      if (rep.ok()) {
        std::cerr << "ok\n";
        return kPass;
      }
      std::cerr << "FAILED:\n" << rep.failures();
      return kFail;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error(e.code()) ? kInputError : kFail;
  }
  return kInputError;
}
