#include "tcm/csv.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
        else quoted = false;
      } else cur += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_double(const std::string& raw, double& out) {
  std::string s = trim(raw);
  if (s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan" || s == ".")
    return false;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

// Accepts "1984Q1" directly, or ISO "1984-01"/"1984-01-01" where the month
// must be a quarter start (1, 4, 7, 10); anything else is a spacing error.
Quarter parse_date_cell(const std::string& raw) {
  std::string s = trim(raw);
  Quarter q;
  if (Quarter::try_parse(s, q)) return q;
  int year = 0, month = 0;
  if (s.size() >= 7 && s[4] == '-' &&
      std::isdigit(static_cast<unsigned char>(s[0]))) {
    year = std::stoi(s.substr(0, 4));
    month = std::stoi(s.substr(5, 2));
    if (month >= 1 && month <= 12) {
      if (month != 1 && month != 4 && month != 7 && month != 10)
        throw DataError("non-quarterly spacing: date '" + s + "' is not a quarter start");
      return Quarter(year, (month - 1) / 3 + 1);
    }
  }
  throw DataError("malformed date column: cannot parse '" + s + "' as a quarter");
}

}  // namespace

int CsvTable::col(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == name) return static_cast<int>(j);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file '" + path + "'");
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (first) {
      for (auto& c : cells) t.header.push_back(trim(c));
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) throw DataError("file '" + path + "' is empty");
  return t;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file '" + path + "'");
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j) out << ',';
      out << cells[j];
    }
    out << '\n';
  };
  emit(table.header);
  for (const auto& r : table.rows) emit(r);
}

std::string canonical_mnemonic(const std::string& m) {
  if (m == "\xcf\x80") return "pi";          // π
  if (m == "\xcf\x80_c") return "pi_c";      // π_c
  if (m == "\xcf\x80^c") return "pi_c";
  return m;
}

std::vector<RawSeries> load_csv(const std::string& path,
                                const std::vector<SchemaEntry>& schema) {
  CsvTable t = read_csv(path);
  int date_col = t.col("date");
  if (date_col < 0) date_col = 0;

  std::vector<Quarter> dates;
  dates.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (static_cast<std::size_t>(date_col) >= row.size())
      throw DataError("row with too few cells in '" + path + "'");
    dates.push_back(parse_date_cell(row[static_cast<std::size_t>(date_col)]));
  }
  for (std::size_t i = 1; i < dates.size(); ++i) {
    auto step = dates[i] - dates[i - 1];
    if (step == 0)
      throw DataError("duplicate date " + dates[i].str() + " in '" + path + "'");
    if (step < 0)
      throw DataError("dates not increasing at " + dates[i].str() + " in '" + path + "'");
  }
  if (dates.empty()) throw DataError("no data rows in '" + path + "'");

  const Quarter start = dates.front();
  const std::size_t T = static_cast<std::size_t>(dates.back() - start) + 1;

  std::vector<RawSeries> out;
  out.reserve(schema.size());
  for (const auto& entry : schema) {
    int j = t.col(entry.column);
    if (j < 0)
      throw DataError("schema column '" + entry.column + "' not found in '" + path + "'");
    RawSeries s;
    s.id = canonical_mnemonic(entry.mnemonic);
    s.start = start;
    s.transformation = entry.transformation;
    s.values.assign(T, kMissing);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto& row = t.rows[i];
      double v;
      if (static_cast<std::size_t>(j) < row.size() && parse_double(row[static_cast<std::size_t>(j)], v))
        s.values[static_cast<std::size_t>(dates[i] - start)] = v;
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_panel_csv(const std::string& path, const TimeSeriesPanel& panel) {
  CsvTable t;
  t.header.push_back("date");
  for (const auto& id : panel.ids()) t.header.push_back(id);
  for (Eigen::Index r = 0; r < panel.rows(); ++r) {
    std::vector<std::string> row;
    row.push_back(panel.date(r).str());
    for (Eigen::Index j = 0; j < panel.cols(); ++j) {
      double v = panel.raw()(r, j);
      if (is_missing(v)) {
        row.emplace_back("");
      } else {
        std::ostringstream os;
        os.precision(17);
        os << v;
        row.push_back(os.str());
      }
    }
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

}  // namespace tcm
