#pragma once

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "peermatch/detail/strings.hpp"
#include "peermatch/errors.hpp"

namespace peermatch::detail {

// Cells never contain the delimiter in any of our formats, so no quoting.
struct CsvRow {
  std::size_t line_no = 0;
  std::vector<std::string> cells;
};

/// Reads all non-blank lines, handling \r\n and a leading UTF-8 BOM.
/// Lines starting with '#' are skipped when `allow_comments` is set.
inline std::vector<CsvRow> read_csv(std::istream& in, bool allow_comments = false) {
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
        line[2] == '\xBF') {
      line.erase(0, 3);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (allow_comments && trimmed[0] == '#') continue;
    CsvRow row;
    row.line_no = line_no;
    for (auto& cell : split(line, ',')) row.cells.push_back(trim(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Header lookup: maps folded column names to their index.
class Header {
 public:
  Header(const CsvRow& row, std::string_view what) : what_(what) {
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      std::string key = fold(row.cells[i]);
      if (index_.count(key) > 0)
        throw ParseError(what_ + ": duplicate column '" + row.cells[i] + "'");
      index_[key] = i;
    }
  }

  std::size_t require(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      throw ParseError(what_ + ": missing required column '" + std::string(name) + "'");
    return it->second;
  }

  bool has(std::string_view name) const { return index_.count(std::string(name)) > 0; }

  std::size_t size() const { return index_.size(); }

 private:
  std::string what_;
  std::map<std::string, std::size_t> index_;
};

inline const std::string& cell_at(const CsvRow& row, std::size_t idx, std::string_view what) {
  if (idx >= row.cells.size())
    throw ParseError(std::string(what) + ": line " + std::to_string(row.line_no) +
                     " has too few cells");
  return row.cells[idx];
}

}  // namespace peermatch::detail
