#pragma once

// Point CSV files, result documents and SVG plots.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mer/error.hpp"
#include "mer/geom.hpp"
#include "mer/solver.hpp"

namespace mer {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_number(const std::string& field, double& out) {
  const std::string f = trim(field);
  if (f.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(f.c_str(), &end);
  if (end != f.c_str() + f.size() || errno == ERANGE) return false;
  return std::isfinite(out);
}

}  // namespace detail

/// Reads "x,y" records. A first line that is not numeric is taken as a header;
/// blank lines are skipped. Throws Parse on anything else.
inline std::vector<Point> read_points_csv(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    double x = 0, y = 0;
    const bool ok = comma != std::string::npos && t.find(',', comma + 1) == std::string::npos &&
                    detail::parse_number(t.substr(0, comma), x) && detail::parse_number(t.substr(comma + 1), y);
    if (!ok) {
      const bool header = !seen_record && std::none_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (header && pts.empty()) {
        seen_record = true;
        continue;
      }
      throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected two finite numbers \"x,y\"");
    }
    seen_record = true;
    pts.push_back({x, y});
  }
  if (pts.empty()) throw Error(ErrorCode::Parse, "no points in input");
  return pts;
}

/// Reads a CSV file, or standard input for "-".
inline std::vector<Point> load_points(const std::string& path) {
  if (path == "-") return read_points_csv(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  return read_points_csv(in);
}

/// Integral values print without a fraction; others with 17 significant digits.
inline std::string format_coordinate(double v) {
  char buf[64];
  if (std::floor(v) == v && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

inline void write_points_csv(std::ostream& out, const std::vector<Point>& pts) {
  out << "x,y\n";
  for (const Point& p : pts) out << format_coordinate(p.x) << ',' << format_coordinate(p.y) << '\n';
}

using Json = nlohmann::ordered_json;

/// Structured result. Timings are only included on request so that repeated
/// runs produce identical documents.
inline Json result_document(const SolveReport& rep, std::size_t n, long long t, bool with_timings = false) {
  Json doc;
  doc["mode"] = to_string(rep.mode);
  doc["n"] = n;
  doc["t"] = t;
  doc["area"] = rep.rectangle.area.value;
  Json corners = Json::array();
  for (const Point& c : rep.rectangle.corners) corners.push_back({c.x, c.y});
  doc["corners"] = corners;
  doc["support_indices"] = rep.rectangle.supports;
  doc["enclosed_count"] = rep.enclosed_indices.size();
  doc["outlier_indices"] = rep.outlier_indices;
  doc["degenerate"] = rep.rectangle.degenerate;
  Json stats;
  stats["k"] = rep.stats.k;
  stats["valid_pair_count"] = rep.stats.valid_pair_count;
  stats["triples_examined"] = rep.stats.triples_examined;
  if (with_timings) {
    stats["time_valid_pairs"] = rep.stats.time_valid_pairs;
    stats["time_enclose"] = rep.stats.time_enclose;
    stats["time_total"] = rep.stats.time_total;
  }
  doc["stats"] = stats;
  if (rep.sample_params) {
    const SampleParams& p = *rep.sample_params;
    doc["sample_params"] = {{"epsilon", p.epsilon}, {"c", p.c}, {"seed", p.seed}, {"s", p.s}, {"t_prime", p.t_prime}};
  }
  return doc;
}

/// SVG 1.1 drawing: one polygon for the rectangle and one circle per point.
inline void write_svg(std::ostream& out, const PointSet& ps, const SolveReport& rep) {
  double lo_x = ps[0].x, hi_x = lo_x, lo_y = ps[0].y, hi_y = lo_y;
  auto grow = [&](Point p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (const Point& p : ps.points()) grow(p);
  for (const Point& p : rep.rectangle.corners) grow(p);
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double pad = 0.05 * span;
  const double r = 0.006 * span;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  std::vector<bool> outlier(ps.size(), false);
  for (std::size_t i : rep.outlier_indices) outlier[i] = true;

  // y grows downward in SVG, so coordinates are emitted with y negated.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
      << num(lo_x - pad) << ' ' << num(-hi_y - pad) << ' ' << num(hi_x - lo_x + 2 * pad) << ' '
      << num(hi_y - lo_y + 2 * pad) << "\">\n";
  out << "  <polygon class=\"rectangle\" fill=\"#4a90d9\" fill-opacity=\"0.15\" stroke=\"#1f4e79\" stroke-width=\""
      << num(r / 2) << "\" points=\"";
  for (std::size_t k = 0; k < 4; ++k) {
    const Point c = rep.rectangle.corners[k];
    out << (k ? " " : "") << num(c.x) << ',' << num(-c.y);
  }
  out << "\"/>\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out << "  <circle class=\"" << (outlier[i] ? "outlier" : "inlier") << "\" cx=\"" << num(ps[i].x) << "\" cy=\""
        << num(-ps[i].y) << "\" r=\"" << num(r) << "\" fill=\"" << (outlier[i] ? "#d62728" : "#222222") << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace mer
