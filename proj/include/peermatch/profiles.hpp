#pragma once

#include <fstream>
#include <istream>
#include <map>
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

/// One learner's attribute record. Immutable by convention after parsing.
struct LearnerProfile {
  LearnerId id = 0;
  int age = 0;  // years
  Gender gender = Gender::Male;
  std::string location;  // city name, resolved against a LocationTable at scoring time
  QualificationLevel qualification;
  std::vector<std::string> interests;  // non-empty; taxonomy concept names
  std::vector<std::string> courses;    // stored, never scored

  AgeLevel age_level() const { return age_to_level(age); }

  friend bool operator==(const LearnerProfile&, const LearnerProfile&) = default;
};

/// Parses the profile file: header `id,age,gen,loc,qua,int[,crs]`,
/// `int`/`crs` cells `;`-separated. Duplicate ids are rejected.
inline std::vector<LearnerProfile> parse_profiles(std::istream& in) {
  auto rows = detail::read_csv(in);
  if (rows.empty()) throw ParseError("profiles: empty input (expected a header row)");
  detail::Header header(rows[0], "profiles");
  std::size_t c_id = header.require("id");
  std::size_t c_age = header.require("age");
  std::size_t c_gen = header.require("gen");
  std::size_t c_loc = header.require("loc");
  std::size_t c_qua = header.require("qua");
  std::size_t c_int = header.require("int");
  bool has_crs = header.has("crs");
  std::size_t c_crs = has_crs ? header.require("crs") : 0;

  std::vector<LearnerProfile> profiles;
  std::set<LearnerId> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto where = [&](const std::string& msg) {
      return ParseError("profiles: line " + std::to_string(row.line_no) + ": " + msg);
    };
    try {
      LearnerProfile p;
      unsigned long long id = 0;
      if (!detail::parse_u64(detail::cell_at(row, c_id, "profiles"), id))
        throw where("invalid id '" + detail::cell_at(row, c_id, "profiles") + "'");
      p.id = id;
      int age = 0;
      if (!detail::parse_int(detail::cell_at(row, c_age, "profiles"), age))
        throw where("unparsable age '" + detail::cell_at(row, c_age, "profiles") + "'");
      age_to_level(age);  // rejects non-positive ages
      p.age = age;
      p.gender = parse_gender(detail::cell_at(row, c_gen, "profiles"));
      p.location = detail::cell_at(row, c_loc, "profiles");
      if (p.location.empty()) throw where("empty location");
      p.qualification = parse_qualification(detail::cell_at(row, c_qua, "profiles"));
      p.interests = detail::parse_name_list(detail::cell_at(row, c_int, "profiles"));
      if (p.interests.empty()) throw where("at least one interest is required");
      if (has_crs) p.courses = detail::parse_name_list(detail::cell_at(row, c_crs, "profiles"));
      if (!seen.insert(p.id).second)
        throw where("duplicate id " + std::to_string(p.id));
      profiles.push_back(std::move(p));
    } catch (const ParseError& e) {
      std::string what = e.what();
      if (what.rfind("profiles: line", 0) == 0) throw;
      throw where(what);
    }
  }
  return profiles;
}

inline std::vector<LearnerProfile> parse_profiles_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profiles file: " + path);
  return parse_profiles(in);
}

/// Writes profiles in the format parse_profiles reads back.
inline void serialize_profiles(std::ostream& out, std::span<const LearnerProfile> profiles) {
  out << "id,age,gen,loc,qua,int,crs\n";
  for (const auto& p : profiles) {
    out << p.id << ',' << p.age << ',' << gender_code(p.gender) << ',' << p.location << ','
        << qualification_name(p.qualification.code) << ',' << detail::join(p.interests, ';')
        << ',' << detail::join(p.courses, ';') << '\n';
  }
}

inline std::string serialize_profiles(std::span<const LearnerProfile> profiles) {
  std::ostringstream out;
  serialize_profiles(out, profiles);
  return out.str();
}

/// Ascending-id index; rejects duplicate ids.
inline std::map<LearnerId, const LearnerProfile*> index_profiles(
    std::span<const LearnerProfile> profiles) {
  std::map<LearnerId, const LearnerProfile*> index;
  for (const auto& p : profiles)
    if (!index.emplace(p.id, &p).second)
      throw ScoringError("duplicate profile id " + std::to_string(p.id));
  return index;
}

}  // namespace peermatch
