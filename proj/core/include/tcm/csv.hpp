#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcm/panel.hpp"
#include "tcm/series.hpp"

namespace tcm {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

struct SchemaEntry {
  std::string column;       // CSV header name
  std::string mnemonic;     // model id (y, e, u, oil, pi, pi_c, uom, spf, ...)
  Transformation transformation = Transformation::kLevels;
};

// Loads the date column (named "date" or the first column) plus one RawSeries
// per schema entry. Dates accept "1984Q1" or ISO month forms restricted to
// quarter starts. Missing cells: empty, "NA", or unparseable numerics.
std::vector<RawSeries> load_csv(const std::string& path,
                                const std::vector<SchemaEntry>& schema);

// Panel writer: date column + one column per series, raw units, "" for
// missing. Round-trips through load_csv with levels transformations.
void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel);

// Canonical ASCII mnemonic ("π" -> "pi", "π_c" -> "pi_c").
std::string canonical_mnemonic(const std::string& m);

}  // namespace tcm
