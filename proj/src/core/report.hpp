// Copyright 2026 splp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace splp {

// Tabular experiment result: ordered metadata plus numeric columns.
// CSV form: "# key: value" header lines, a column-name row, then data rows.
// Serialization uses shortest-round-trip number formatting so
// parse(serialize(r)) reproduces the exact doubles and a re-serialize is
// byte-identical.
struct Report {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, const std::string& value);
  const std::string* find_meta(const std::string& key) const;
  int column_index(const std::string& name) const;  // -1 if absent
};

std::string report_to_csv(const Report& r);
Report report_from_csv(const std::string& text);

// any row with a 0 in the "reliable" column (when present)
bool report_has_unreliable(const Report& r);

// Line plot of y_column vs x_column, one polyline per distinct value of
// curve_column (pass "" for a single curve). log_y plots log10(y), skipping
// non-positive values.
struct SvgOptions {
  std::string x_column;
  std::string y_column;
  std::string curve_column;
  bool log_y = false;
  int width = 720;
  int height = 480;
};
std::string report_to_svg(const Report& r, const SvgOptions& opt);

}  // namespace splp
