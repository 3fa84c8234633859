#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "peermatch/detail/csv.hpp"
#include "peermatch/detail/strings.hpp"
#include "peermatch/errors.hpp"

namespace peermatch {

struct LocationInfo {
  std::string city;      // display name as loaded
  std::string country;
  std::string timezone;  // IANA-style identifier, e.g. America/Edmonton
};

/// City -> (country, timezone) lookup. Keys are normalized (trimmed,
/// case-folded), so "frankfurt" and "Frankfurt " resolve identically.
class LocationTable {
 public:
  /// Loads `city,country,timezone` rows. A header row is optional and
  /// detected by its column names.
  static LocationTable load(std::istream& in) {
    LocationTable table;
    auto rows = detail::read_csv(in, /*allow_comments=*/true);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (i == 0 && detail::fold(row.cells[0]) == "city") continue;
      if (row.cells.size() != 3)
        throw ParseError("location table: line " + std::to_string(row.line_no) +
                         " must have 3 cells (city,country,timezone)");
      LocationInfo info{row.cells[0], row.cells[1], row.cells[2]};
      if (info.city.empty() || info.country.empty() || info.timezone.empty())
        throw ParseError("location table: line " + std::to_string(row.line_no) +
                         " has an empty cell");
      std::string key = detail::fold(info.city);
      if (table.by_city_.count(key) > 0)
        throw ParseError("location table: duplicate city '" + info.city + "'");
      table.by_city_.emplace(std::move(key), std::move(info));
    }
    return table;
  }

  static LocationTable load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open location table file: " + path);
    return load(in);
  }

  const LocationInfo* find(std::string_view city) const {
    auto it = by_city_.find(detail::fold(city));
    return it == by_city_.end() ? nullptr : &it->second;
  }

  /// Display names, sorted by normalized key (deterministic draw pool).
  std::vector<std::string> cities() const {
    std::vector<std::string> out;
    out.reserve(by_city_.size());
    for (const auto& [key, info] : by_city_) out.push_back(info.city);
    return out;
  }

  std::size_t size() const { return by_city_.size(); }

 private:
  std::map<std::string, LocationInfo> by_city_;
};

}  // namespace peermatch
