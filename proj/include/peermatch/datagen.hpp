#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "peermatch/locations.hpp"
#include "peermatch/preferences.hpp"
#include "peermatch/profiles.hpp"
#include "peermatch/taxonomy.hpp"

namespace peermatch {

/// Knobs for the synthetic population generator. Pools (cities, interest
/// concepts) are injected from a LocationTable / Taxonomy rather than
/// configured by hand.
struct GenConfig {
  std::size_t population = 1000;
  std::uint64_t seed = 1;

  int min_age = 16;
  int max_age = 60;
  // Weight per age band (<20, 20-25, 25-30, 30-35, 35+); young-skewed.
  std::array<double, kOrdinalLevels> age_weights{0.15, 0.30, 0.25, 0.18, 0.12};

  double male_ratio = 0.55;

  std::array<double, kOrdinalLevels> qualification_weights{0.05, 0.25, 0.40, 0.22, 0.08};

  std::vector<std::string> cities;         // display names, from a LocationTable
  std::vector<std::string> interest_pool;  // concept names, from taxonomy leaves
  int min_interests = 1;
  int max_interests = 3;
  int min_courses = 1;
  int max_courses = 3;
  std::size_t course_pool = 40;

  // Chance each preference attribute is expressed at all. High enough that
  // 1000-user populations keep gaining mutual matches out to K=20.
  double age_pref_prob = 0.85;
  double gender_pref_prob = 0.85;
  double location_pref_prob = 0.85;
  double qualification_pref_prob = 0.85;
  double interest_pref_prob = 0.85;
  // Chance a defined attribute is additionally flagged as a priority.
  double priority_prob = 0.3;
  // Chance the interest preference repeats one of the learner's own interests.
  double own_interest_prob = 0.5;

  void use_cities(const LocationTable& table) { cities = table.cities(); }
  void use_interests(const Taxonomy& taxonomy) { interest_pool = taxonomy.leaves(); }

  void validate() const {
    if (population < 2) throw ParseError("population must be >= 2");
    if (min_age < 1 || max_age < min_age)
      throw ParseError("age range must satisfy 1 <= min_age <= max_age");
    auto check_prob = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0))
        throw ParseError(std::string(name) + " must be in [0, 1]");
    };
    check_prob(male_ratio, "male_ratio");
    check_prob(age_pref_prob, "age_pref_prob");
    check_prob(gender_pref_prob, "gender_pref_prob");
    check_prob(location_pref_prob, "location_pref_prob");
    check_prob(qualification_pref_prob, "qualification_pref_prob");
    check_prob(interest_pref_prob, "interest_pref_prob");
    check_prob(priority_prob, "priority_prob");
    check_prob(own_interest_prob, "own_interest_prob");
    if (age_pref_prob == 0.0 && gender_pref_prob == 0.0 && location_pref_prob == 0.0 &&
        qualification_pref_prob == 0.0 && interest_pref_prob == 0.0)
      throw ParseError("at least one preference probability must be positive");
    auto check_weights = [](const std::array<double, kOrdinalLevels>& w, const char* name) {
      double total = 0.0;
      for (double v : w) {
        if (v < 0.0) throw ParseError(std::string(name) + " must be non-negative");
        total += v;
      }
      if (total <= 0.0) throw ParseError(std::string(name) + " must not all be zero");
    };
    check_weights(age_weights, "age_weights");
    check_weights(qualification_weights, "qualification_weights");
    if (min_interests < 1 || max_interests < min_interests)
      throw ParseError("interest count range must satisfy 1 <= min <= max");
    if (min_courses < 0 || max_courses < min_courses)
      throw ParseError("course count range must satisfy 0 <= min <= max");
    if (course_pool < 1) throw ParseError("course_pool must be >= 1");
  }

  void load(std::istream& in);
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    load(in);
  }
};

struct GeneratedData {
  std::vector<LearnerProfile> profiles;
  std::vector<Preference> preferences;
};

namespace detail {

// Sampling helpers hand-rolled on top of mt19937_64 so that a seed produces
// the same population on every platform (std::*_distribution would not).
inline double next_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
  std::size_t i = static_cast<std::size_t>(next_double(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

inline int pick_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(pick_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

inline bool flip(std::mt19937_64& rng, double p) { return next_double(rng) < p; }

template <std::size_t N>
int pick_weighted(std::mt19937_64& rng, const std::array<double, N>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double r = next_double(rng) * total;
  for (std::size_t i = 0; i < N; ++i) {
    r -= weights[i];
    if (r < 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(N) - 1;  // r landed on the total due to rounding
}

// Inclusive age range of band `level`, clipped to [min_age, max_age];
// returns false when the clip leaves it empty.
inline bool age_band_range(int level, int min_age, int max_age, int& lo, int& hi) {
  lo = level == 0 ? 1 : kAgeBoundaries[static_cast<std::size_t>(level - 1)];
  hi = level == static_cast<int>(kOrdinalLevels) - 1
           ? max_age
           : kAgeBoundaries[static_cast<std::size_t>(level)] - 1;
  lo = std::max(lo, min_age);
  hi = std::min(hi, max_age);
  return lo <= hi;
}

}  // namespace detail

/// Builds a seeded random population. Same config (seed included) always
/// yields the same profiles and preferences.
inline GeneratedData generate(const GenConfig& config) {
  config.validate();
  if (config.cities.empty()) throw ParseError("city pool is empty");
  if (config.interest_pool.empty()) throw ParseError("interest pool is empty");

  // Bands that cannot produce an age inside [min_age, max_age] drop out.
  std::array<double, kOrdinalLevels> age_weights = config.age_weights;
  bool any_band = false;
  for (std::size_t level = 0; level < kOrdinalLevels; ++level) {
    int lo, hi;
    if (!detail::age_band_range(static_cast<int>(level), config.min_age, config.max_age, lo, hi))
      age_weights[level] = 0.0;
    if (age_weights[level] > 0.0) any_band = true;
  }
  if (!any_band) throw ParseError("age range excludes every weighted age band");

  std::mt19937_64 rng(config.seed);
  GeneratedData data;
  data.profiles.reserve(config.population);
  data.preferences.reserve(config.population);

  for (std::size_t i = 0; i < config.population; ++i) {
    LearnerProfile profile;
    profile.id = static_cast<LearnerId>(i + 1);

    int band = detail::pick_weighted(rng, age_weights);
    int lo, hi;
    detail::age_band_range(band, config.min_age, config.max_age, lo, hi);
    profile.age = detail::pick_int(rng, lo, hi);

    profile.gender = detail::flip(rng, config.male_ratio) ? Gender::Male : Gender::Female;
    profile.location = config.cities[detail::pick_index(rng, config.cities.size())];
    profile.qualification =
        QualificationLevel{detail::pick_weighted(rng, config.qualification_weights)};

    int n_interests = detail::pick_int(rng, config.min_interests, config.max_interests);
    n_interests = std::min<int>(n_interests, static_cast<int>(config.interest_pool.size()));
    std::vector<std::string> pool = config.interest_pool;
    for (int j = 0; j < n_interests; ++j) {
      std::size_t pick = detail::pick_index(rng, pool.size());
      profile.interests.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    int n_courses = detail::pick_int(rng, config.min_courses, config.max_courses);
    for (int j = 0; j < n_courses; ++j) {
      std::string course = "course" + std::to_string(detail::pick_index(rng, config.course_pool) + 1);
      if (std::find(profile.courses.begin(), profile.courses.end(), course) ==
          profile.courses.end())
        profile.courses.push_back(course);
    }

    Preference pref;
    pref.learner_id = profile.id;
    do {
      pref = Preference{};
      pref.learner_id = profile.id;

      if (detail::flip(rng, config.age_pref_prob)) {
        int level = detail::pick_weighted(rng, age_weights);
        double form = detail::next_double(rng);
        LevelSet levels;
        if (form < 0.5) {
          levels.insert(level);
        } else if (form < 0.75) {
          for (int l = 0; l <= level; ++l) levels.insert(l);
        } else {
          for (int l = level; l < static_cast<int>(kOrdinalLevels); ++l) levels.insert(l);
        }
        pref.age_levels = levels;
      }
      if (detail::flip(rng, config.gender_pref_prob))
        pref.gender = detail::flip(rng, 0.5) ? Gender::Male : Gender::Female;
      if (detail::flip(rng, config.location_pref_prob)) {
        static constexpr std::array<LocationScope, 3> kScopes{
            LocationScope::SameCity, LocationScope::SameCountry, LocationScope::SameTimezone};
        pref.location = kScopes[detail::pick_index(rng, kScopes.size())];
      }
      if (detail::flip(rng, config.qualification_pref_prob)) {
        int level = detail::pick_weighted(rng, config.qualification_weights);
        double form = detail::next_double(rng);
        LevelSet levels;
        if (form < 0.5) {
          levels.insert(level);
        } else if (form < 0.75) {
          for (int l = 0; l <= level; ++l) levels.insert(l);
        } else {
          for (int l = level; l < static_cast<int>(kOrdinalLevels); ++l) levels.insert(l);
        }
        pref.qualification_levels = levels;
      }
      if (detail::flip(rng, config.interest_pref_prob)) {
        std::string wanted;
        if (detail::flip(rng, config.own_interest_prob)) {
          wanted = profile.interests[detail::pick_index(rng, profile.interests.size())];
        } else {
          wanted = config.interest_pool[detail::pick_index(rng, config.interest_pool.size())];
        }
        pref.interests = std::vector<std::string>{std::move(wanted)};
      }
    } while (pref.defined_count() == 0);

    for (Attribute a : kAllAttributes) {
      if (pref.defines(a) && detail::flip(rng, config.priority_prob)) pref.priorities.insert(a);
    }

    data.profiles.push_back(std::move(profile));
    data.preferences.push_back(std::move(pref));
  }
  return data;
}

inline void GenConfig::load(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto parse_weights = [](const std::string& value, const char* key) {
    std::array<double, kOrdinalLevels> out{};
    std::vector<std::string> parts = detail::split_trimmed(value, ',');
    if (parts.size() != kOrdinalLevels)
      throw ParseError(std::string(key) + " needs " + std::to_string(kOrdinalLevels) +
                       " comma-separated weights");
    for (std::size_t i = 0; i < kOrdinalLevels; ++i) {
      if (!detail::parse_double(parts[i], out[i]))
        throw ParseError(std::string(key) + ": bad number '" + parts[i] + "'");
    }
    return out;
  };
  auto to_u64 = [](const std::string& value, const char* key) {
    unsigned long long v = 0;
    if (!detail::parse_u64(value, v))
      throw ParseError(std::string(key) + ": bad integer '" + value + "'");
    return v;
  };
  auto to_int = [](const std::string& value, const char* key) {
    int v = 0;
    if (!detail::parse_int(value, v))
      throw ParseError(std::string(key) + ": bad integer '" + value + "'");
    return v;
  };
  auto to_double = [](const std::string& value, const char* key) {
    double v = 0.0;
    if (!detail::parse_double(value, v))
      throw ParseError(std::string(key) + ": bad number '" + value + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = detail::to_lower(detail::trim(text.substr(0, eq)));
    std::string value = detail::trim(text.substr(eq + 1));

    if (key == "population") population = static_cast<std::size_t>(to_u64(value, "population"));
    else if (key == "seed") seed = to_u64(value, "seed");
    else if (key == "min_age") min_age = to_int(value, "min_age");
    else if (key == "max_age") max_age = to_int(value, "max_age");
    else if (key == "age_weights") age_weights = parse_weights(value, "age_weights");
    else if (key == "male_ratio") male_ratio = to_double(value, "male_ratio");
    else if (key == "qualification_weights")
      qualification_weights = parse_weights(value, "qualification_weights");
    else if (key == "min_interests") min_interests = to_int(value, "min_interests");
    else if (key == "max_interests") max_interests = to_int(value, "max_interests");
    else if (key == "min_courses") min_courses = to_int(value, "min_courses");
    else if (key == "max_courses") max_courses = to_int(value, "max_courses");
    else if (key == "course_pool") course_pool = static_cast<std::size_t>(to_u64(value, "course_pool"));
    else if (key == "age_pref_prob") age_pref_prob = to_double(value, "age_pref_prob");
    else if (key == "gender_pref_prob") gender_pref_prob = to_double(value, "gender_pref_prob");
    else if (key == "location_pref_prob") location_pref_prob = to_double(value, "location_pref_prob");
    else if (key == "qualification_pref_prob")
      qualification_pref_prob = to_double(value, "qualification_pref_prob");
    else if (key == "interest_pref_prob") interest_pref_prob = to_double(value, "interest_pref_prob");
    else if (key == "priority_prob") priority_prob = to_double(value, "priority_prob");
    else if (key == "own_interest_prob") own_interest_prob = to_double(value, "own_interest_prob");
    else
      throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  validate();
}

}  // namespace peermatch
