#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "peermatch/core.hpp"
#include "peermatch/detail/csv.hpp"
#include "peermatch/errors.hpp"

namespace peermatch {

/// One learner's desired-partner constraints. Undefined attributes are
/// ignored by the scoring pipeline; at least one must be defined.
struct Preference {
  LearnerId learner_id = 0;
  std::optional<LevelSet> age_levels;
  std::optional<Gender> gender;
  std::optional<LocationScope> location;
  std::optional<LevelSet> qualification_levels;
  std::optional<std::vector<std::string>> interests;
  AttributeSet priorities;  // subset of the defined attributes

  bool defines(Attribute a) const {
    switch (a) {
      case Attribute::Age: return age_levels.has_value();
      case Attribute::Gender: return gender.has_value();
      case Attribute::Location: return location.has_value();
      case Attribute::Qualification: return qualification_levels.has_value();
      case Attribute::Interest: return interests.has_value();
    }
    return false;
  }

  int defined_count() const {
    int n = 0;
    for (Attribute a : kAllAttributes)
      if (defines(a)) ++n;
    return n;
  }

  friend bool operator==(const Preference&, const Preference&) = default;
};

namespace detail {

/// Age-preference cell: a band token ("25-30"), a threshold over a boundary
/// age ("<=25" keeps every band lying entirely at or below 25), or a
/// `;`-separated list of band tokens.
inline LevelSet parse_age_levels(const std::string& cell) {
  std::string t = trim(cell);
  auto expand_threshold = [&](bool upper, int boundary) {
    // Band extents in years: band 0 is [1, 20), band 4 is [35, inf). A band
    // is kept iff it lies entirely inside the threshold's half-line.
    LevelSet set;
    for (int code = 0; code < kOrdinalLevels; ++code) {
      bool in;
      if (upper) {
        in = code < kOrdinalLevels - 1 &&
             kAgeBoundaries[static_cast<std::size_t>(code)] <= boundary;
      } else {
        in = code == 0 ? boundary <= 1
                       : kAgeBoundaries[static_cast<std::size_t>(code - 1)] >= boundary;
      }
      if (in) set.insert(code);
    }
    if (set.empty())
      throw ParseError("age preference '" + cell + "' matches no age band");
    return set;
  };

  if (t.rfind("<=", 0) == 0 || t.rfind(">=", 0) == 0) {
    bool upper = t[0] == '<';
    int boundary = 0;
    if (!parse_int(t.substr(2), boundary) || boundary < 1)
      throw ParseError("invalid age threshold '" + cell + "'");
    return expand_threshold(upper, boundary);
  }

  auto parse_band = [](const std::string& token) {
    std::string f = fold_compact(token);
    if (f == "<20" || f == "lessthan20" || f == "under20") return 0;
    if (f == "2025") return 1;
    if (f == "2530") return 2;
    if (f == "3035") return 3;
    if (f == "35+" || f == ">=35" || f == "35andabove") return 4;
    throw ParseError("invalid age band '" + token +
                     "' (expected <20, 20-25, 25-30, 30-35 or 35+)");
  };

  LevelSet set;
  for (const auto& token : split_trimmed(t, ';')) set.insert(parse_band(token));
  if (set.empty()) throw ParseError("empty age preference cell");
  return set;
}

/// Qualification cell: a level name, a threshold over a level name
/// (">=Masters"), or a `;`-separated list of level names.
inline LevelSet parse_qualification_levels(const std::string& cell) {
  std::string t = trim(cell);
  if (t.rfind("<=", 0) == 0 || t.rfind(">=", 0) == 0) {
    int pivot = parse_qualification(t.substr(2)).code;
    return t[0] == '<' ? LevelSet::range(0, pivot) : LevelSet::range(pivot, kOrdinalLevels - 1);
  }
  LevelSet set;
  for (const auto& token : split_trimmed(t, ';')) set.insert(parse_qualification(token).code);
  if (set.empty()) throw ParseError("empty qualification preference cell");
  return set;
}

inline bool is_undefined_cell(const std::string& cell) {
  std::string f = fold(cell);
  return f.empty() || f == "x";
}

inline std::string serialize_age_levels(const LevelSet& set) {
  std::vector<std::string> tokens;
  for (int code : set.levels()) tokens.push_back(age_level_name(code));
  return join(tokens, ';');
}

inline std::string serialize_qualification_levels(const LevelSet& set) {
  std::vector<std::string> tokens;
  for (int code : set.levels()) tokens.push_back(qualification_name(code));
  return join(tokens, ';');
}

}  // namespace detail

/// Parses the preference file: header `id,age,gen,loc,qua,int,priority`.
/// "x" marks an undefined attribute; `priority` lists attribute names
/// (`age;qua`) and may itself be "x".
inline std::vector<Preference> parse_preferences(std::istream& in) {
  auto rows = detail::read_csv(in);
  if (rows.empty()) throw ParseError("preferences: empty input (expected a header row)");
  detail::Header header(rows[0], "preferences");
  std::size_t c_id = header.require("id");
  std::size_t c_age = header.require("age");
  std::size_t c_gen = header.require("gen");
  std::size_t c_loc = header.require("loc");
  std::size_t c_qua = header.require("qua");
  std::size_t c_int = header.require("int");
  std::size_t c_pri = header.require("priority");

  std::vector<Preference> prefs;
  std::set<LearnerId> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto where = [&](const std::string& msg) {
      return ParseError("preferences: line " + std::to_string(row.line_no) + ": " + msg);
    };
    try {
      Preference p;
      unsigned long long id = 0;
      if (!detail::parse_u64(detail::cell_at(row, c_id, "preferences"), id))
        throw where("invalid id '" + detail::cell_at(row, c_id, "preferences") + "'");
      p.learner_id = id;

      const std::string& age_cell = detail::cell_at(row, c_age, "preferences");
      if (!detail::is_undefined_cell(age_cell)) p.age_levels = detail::parse_age_levels(age_cell);
      const std::string& gen_cell = detail::cell_at(row, c_gen, "preferences");
      if (!detail::is_undefined_cell(gen_cell)) p.gender = parse_gender(gen_cell);
      const std::string& loc_cell = detail::cell_at(row, c_loc, "preferences");
      if (!detail::is_undefined_cell(loc_cell)) p.location = parse_location_scope(loc_cell);
      const std::string& qua_cell = detail::cell_at(row, c_qua, "preferences");
      if (!detail::is_undefined_cell(qua_cell))
        p.qualification_levels = detail::parse_qualification_levels(qua_cell);
      const std::string& int_cell = detail::cell_at(row, c_int, "preferences");
      if (!detail::is_undefined_cell(int_cell)) {
        auto interests = detail::parse_name_list(int_cell);
        if (interests.empty()) throw where("empty interest preference");
        p.interests = std::move(interests);
      }

      if (p.defined_count() == 0) throw where("at least one preference required");

      const std::string& pri_cell = detail::cell_at(row, c_pri, "preferences");
      if (!detail::is_undefined_cell(pri_cell)) {
        for (const auto& name : detail::split_trimmed(pri_cell, ';')) {
          Attribute a = parse_attribute(name);
          if (!p.defines(a))
            throw where("priority on undefined attribute '" + attribute_code(a) + "'");
          p.priorities.insert(a);
        }
      }

      if (!seen.insert(p.learner_id).second)
        throw where("duplicate id " + std::to_string(p.learner_id));
      prefs.push_back(std::move(p));
    } catch (const ParseError& e) {
      std::string what = e.what();
      if (what.rfind("preferences: line", 0) == 0) throw;
      throw where(what);
    }
  }
  return prefs;
}

inline std::vector<Preference> parse_preferences_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open preferences file: " + path);
  return parse_preferences(in);
}

/// Writes preferences in the format parse_preferences reads back.
inline void serialize_preferences(std::ostream& out, std::span<const Preference> prefs) {
  out << "id,age,gen,loc,qua,int,priority\n";
  for (const auto& p : prefs) {
    out << p.learner_id << ',';
    out << (p.age_levels ? detail::serialize_age_levels(*p.age_levels) : "x") << ',';
    out << (p.gender ? std::string(1, gender_code(*p.gender)) : "x") << ',';
    out << (p.location ? location_scope_name(*p.location) : "x") << ',';
    out << (p.qualification_levels
                ? detail::serialize_qualification_levels(*p.qualification_levels)
                : "x")
        << ',';
    out << (p.interests ? detail::join(*p.interests, ';') : "x") << ',';
    if (p.priorities.empty()) {
      out << 'x';
    } else {
      std::vector<std::string> names;
      for (Attribute a : p.priorities.to_vector()) names.push_back(attribute_code(a));
      out << detail::join(names, ';');
    }
    out << '\n';
  }
}

inline std::string serialize_preferences(std::span<const Preference> prefs) {
  std::ostringstream out;
  serialize_preferences(out, prefs);
  return out.str();
}

/// Ascending-id index; rejects duplicate ids.
inline std::map<LearnerId, const Preference*> index_preferences(
    std::span<const Preference> prefs) {
  std::map<LearnerId, const Preference*> index;
  for (const auto& p : prefs)
    if (!index.emplace(p.learner_id, &p).second)
      throw ScoringError("duplicate preference id " + std::to_string(p.learner_id));
  return index;
}

}  // namespace peermatch
