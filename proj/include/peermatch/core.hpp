#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "peermatch/detail/strings.hpp"
#include "peermatch/errors.hpp"

namespace peermatch {

using LearnerId = std::uint64_t;

/// Both ordinal attributes (age band, qualification) use five levels 0..4,
/// so the largest possible gap between two levels is 4.
inline constexpr int kOrdinalLevels = 5;
inline constexpr int kMaxOrdinalGap = kOrdinalLevels - 1;

enum class Gender : std::uint8_t { Male, Female };

inline char gender_code(Gender g) { return g == Gender::Male ? 'M' : 'F'; }

inline Gender parse_gender(std::string_view s) {
  std::string f = detail::fold(s);
  if (f == "m" || f == "male") return Gender::Male;
  if (f == "f" || f == "female") return Gender::Female;
  throw ParseError("invalid gender '" + std::string(s) + "' (expected M or F)");
}

enum class LocationScope : std::uint8_t { SameCity, SameCountry, SameTimezone };

inline std::string location_scope_name(LocationScope s) {
  switch (s) {
    case LocationScope::SameCity: return "same city";
    case LocationScope::SameCountry: return "same country";
    case LocationScope::SameTimezone: return "same timezone";
  }
  return "?";
}

inline LocationScope parse_location_scope(std::string_view s) {
  std::string f = detail::fold_compact(s);
  if (f == "samecity") return LocationScope::SameCity;
  if (f == "samecountry") return LocationScope::SameCountry;
  if (f == "sametimezone") return LocationScope::SameTimezone;
  throw ParseError("invalid location preference '" + std::string(s) +
                   "' (expected same city, same country or same timezone)");
}

/// The five scored attributes, in the order their distances are summed.
enum class Attribute : std::uint8_t {
  Age = 0,
  Gender = 1,
  Location = 2,
  Qualification = 3,
  Interest = 4,
};

inline constexpr int kAttributeCount = 5;

inline constexpr std::array<Attribute, kAttributeCount> kAllAttributes = {
    Attribute::Age, Attribute::Gender, Attribute::Location, Attribute::Qualification,
    Attribute::Interest};

inline std::string attribute_code(Attribute a) {
  switch (a) {
    case Attribute::Age: return "age";
    case Attribute::Gender: return "gen";
    case Attribute::Location: return "loc";
    case Attribute::Qualification: return "qua";
    case Attribute::Interest: return "int";
  }
  return "?";
}

inline Attribute parse_attribute(std::string_view s) {
  std::string f = detail::fold(s);
  if (f == "age") return Attribute::Age;
  if (f == "gen" || f == "gender") return Attribute::Gender;
  if (f == "loc" || f == "location") return Attribute::Location;
  if (f == "qua" || f == "qualification") return Attribute::Qualification;
  if (f == "int" || f == "interest" || f == "interests") return Attribute::Interest;
  throw ParseError("invalid attribute name '" + std::string(s) +
                   "' (expected one of age, gen, loc, qua, int)");
}

/// Small set of attributes; used for preference priorities.
class AttributeSet {
 public:
  bool contains(Attribute a) const { return bits_[static_cast<std::size_t>(a)]; }
  void insert(Attribute a) { bits_.set(static_cast<std::size_t>(a)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  std::vector<Attribute> to_vector() const {
    std::vector<Attribute> out;
    for (Attribute a : kAllAttributes)
      if (contains(a)) out.push_back(a);
    return out;
  }

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::bitset<kAttributeCount> bits_;
};

/// Non-empty subset of the five ordinal levels 0..4. Shared by age-band and
/// qualification preferences.
class LevelSet {
 public:
  LevelSet() = default;

  static LevelSet single(int level) {
    LevelSet s;
    s.insert(level);
    return s;
  }

  /// Contiguous run [lo, hi], inclusive.
  static LevelSet range(int lo, int hi) {
    LevelSet s;
    for (int l = lo; l <= hi; ++l) s.insert(l);
    return s;
  }

  void insert(int level) {
    check_level(level);
    bits_.set(static_cast<std::size_t>(level));
  }

  bool contains(int level) const {
    check_level(level);
    return bits_[static_cast<std::size_t>(level)];
  }

  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  /// Smallest |L - value| over the levels L in the set.
  int min_gap(int value) const {
    check_level(value);
    int best = kMaxOrdinalGap + 1;
    for (int l = 0; l < kOrdinalLevels; ++l)
      if (bits_[static_cast<std::size_t>(l)] && std::abs(l - value) < best)
        best = std::abs(l - value);
    return best;
  }

  std::vector<int> levels() const {
    std::vector<int> out;
    for (int l = 0; l < kOrdinalLevels; ++l)
      if (bits_[static_cast<std::size_t>(l)]) out.push_back(l);
    return out;
  }

  friend bool operator==(const LevelSet&, const LevelSet&) = default;

 private:
  static void check_level(int level) {
    if (level < 0 || level >= kOrdinalLevels)
      throw Error("ordinal level " + std::to_string(level) + " out of range 0..4");
  }

  std::bitset<kOrdinalLevels> bits_;
};

// ---------------------------------------------------------------------------
// Qualification levels

inline constexpr std::array<std::string_view, kOrdinalLevels> kQualificationNames = {
    "LessThanSecondary", "Secondary", "Bachelors", "Masters", "Doctorate"};

struct QualificationLevel {
  int code = 0;  // 0 = less-than-secondary .. 4 = doctorate

  friend bool operator==(const QualificationLevel&, const QualificationLevel&) = default;
};

inline std::string qualification_name(int code) {
  return std::string(kQualificationNames[static_cast<std::size_t>(code)]);
}

inline QualificationLevel parse_qualification(std::string_view s) {
  std::string f = detail::fold_compact(s);
  for (int i = 0; i < kOrdinalLevels; ++i)
    if (f == detail::fold_compact(kQualificationNames[static_cast<std::size_t>(i)]))
      return QualificationLevel{i};
  std::string names;
  for (int i = 0; i < kOrdinalLevels; ++i) {
    if (i > 0) names += ", ";
    names += qualification_name(i);
  }
  throw ParseError("unknown qualification '" + std::string(s) + "' (valid levels: " + names + ")");
}

// ---------------------------------------------------------------------------
// Age bands

/// Band boundaries: <20, [20,25), [25,30), [30,35), >=35.
inline constexpr std::array<int, 4> kAgeBoundaries = {20, 25, 30, 35};

struct AgeLevel {
  int code = 0;  // 0 = under 20 .. 4 = 35 and above

  friend bool operator==(const AgeLevel&, const AgeLevel&) = default;
};

/// Maps an age in years to its band. Lower bounds are inclusive, so 25 falls
/// in band 2 ([25,30)).
inline AgeLevel age_to_level(int age) {
  if (age < 1) throw ParseError("age must be positive, got " + std::to_string(age));
  int code = 0;
  for (int b : kAgeBoundaries)
    if (age >= b) ++code;
  return AgeLevel{code};
}

inline std::string age_level_name(int code) {
  switch (code) {
    case 0: return "<20";
    case 1: return "20-25";
    case 2: return "25-30";
    case 3: return "30-35";
    case 4: return "35+";
  }
  throw Error("age level " + std::to_string(code) + " out of range 0..4");
}

}  // namespace peermatch
