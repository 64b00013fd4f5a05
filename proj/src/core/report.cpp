// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "core/config.hpp"

namespace splp {

void Report::add_meta(const std::string& key, const std::string& value) {
  meta.emplace_back(key, value);
}

const std::string* Report::find_meta(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return &v;
  return nullptr;
}

int Report::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::string report_to_csv(const Report& r) {
  std::string out;
  for (const auto& [k, v] : r.meta) {
    out += "# ";
    out += k;
    out += ": ";
    out += v;
    out += "\n";
  }
  for (size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ",";
    out += r.columns[i];
  }
  out += "\n";
  for (const auto& row : r.rows) {
    if (row.size() != r.columns.size())
      throw std::logic_error("row width does not match column count");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

Report report_from_csv(const std::string& text) {
  Report r;
  std::istringstream in(text);
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t start = line.find_first_not_of(" \t", 1);
      if (start == std::string::npos) continue;
      size_t colon = line.find(": ", start);
      if (colon == std::string::npos)
        throw ConfigError("malformed metadata line: " + line);
      r.meta.emplace_back(line.substr(start, colon - start),
                          line.substr(colon + 2));
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (!have_columns) {
      r.columns = fields;
      have_columns = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      char* end = nullptr;
      double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0')
        throw ConfigError("bad numeric field '" + f + "'");
      row.push_back(v);
    }
    if (row.size() != r.columns.size())
      throw ConfigError("row width mismatch in CSV");
    r.rows.push_back(std::move(row));
  }
  if (!have_columns) throw ConfigError("CSV has no column header");
  return r;
}

bool report_has_unreliable(const Report& r) {
  int c = r.column_index("reliable");
  if (c < 0) return false;
  for (const auto& row : r.rows)
    if (row[c] == 0.0) return true;
  return false;
}

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string report_to_svg(const Report& r, const SvgOptions& opt) {
  const int xc = r.column_index(opt.x_column);
  const int yc = r.column_index(opt.y_column);
  if (xc < 0 || yc < 0)
    throw ConfigError("svg: unknown x or y column");
  const int cc = opt.curve_column.empty() ? -1 : r.column_index(opt.curve_column);
  if (!opt.curve_column.empty() && cc < 0)
    throw ConfigError("svg: unknown curve column");

  // curve id -> points, insertion-ordered
  std::vector<double> curve_keys;
  std::map<double, std::vector<std::pair<double, double>>> curves;
  for (const auto& row : r.rows) {
    double y = row[yc];
    if (opt.log_y) {
      if (!(y > 0)) continue;
      y = std::log10(y);
    }
    double key = cc < 0 ? 0.0 : row[cc];
    if (!curves.count(key)) curve_keys.push_back(key);
    curves[key].emplace_back(row[xc], y);
  }

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& [k, pts] : curves) {
    for (const auto& [x, y] : pts) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const double ml = 70, mr = 20, mt = 20, mb = 50;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
    << "\" height=\"" << opt.height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
    << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    double fx = xmin + (xmax - xmin) * i / nticks;
    double fy = ymin + (ymax - ymin) * i / nticks;
    s << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\""
      << px(fx) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 18
      << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(fx)
      << "</text>\n";
    s << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
      << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
      << "\" font-size=\"11\" text-anchor=\"end\">"
      << fmt_tick(opt.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  s << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 12
    << "\" font-size=\"13\" text-anchor=\"middle\">" << opt.x_column
    << "</text>\n";
  s << "<text x=\"16\" y=\"" << mt + ph / 2
    << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << mt + ph / 2 << ")\">" << opt.y_column
    << (opt.log_y ? " (log scale)" : "") << "</text>\n";

  int ci = 0;
  for (double key : curve_keys) {
    const auto& pts = curves[key];
    const char* color = kPalette[ci % 8];
    s << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) s << px(x) << "," << py(y) << " ";
    s << "\"/>\n";
    for (const auto& [x, y] : pts)
      s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
        << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    if (cc >= 0) {
      s << "<text x=\"" << ml + pw - 6 << "\" y=\"" << mt + 16 + 16 * ci
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">"
        << opt.curve_column << " = " << fmt_tick(key) << "</text>\n";
    }
    ++ci;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace splp
