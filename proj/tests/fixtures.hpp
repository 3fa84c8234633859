#pragma once

// Shared worked-example data used across the unit and acceptance suites:
// the four-learner sample, its published distance matrix, the seven-node
// concept fixture and the six-learner ranked lists.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "peermatch/peermatch.hpp"

#ifndef PEERMATCH_DATA_DIR
#error "PEERMATCH_DATA_DIR must point at the bundled data directory"
#endif

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(PEERMATCH_DATA_DIR) + "/" + name;
}

inline std::vector<std::pair<std::string, std::string>> concept_edges() {
  return {{"root", "sports"},  {"root", "science"},  {"sports", "football"},
          {"sports", "soccer"}, {"science", "AI"},   {"AI", "ML"}};
}

inline peermatch::Taxonomy concept_tree() {
  return peermatch::Taxonomy::from_edges(concept_edges());
}

inline peermatch::Taxonomy bundled_taxonomy() {
  return peermatch::Taxonomy::load_file(data_path("taxonomy.csv"));
}

inline peermatch::LocationTable bundled_locations() {
  return peermatch::LocationTable::load_file(data_path("locations.csv"));
}

inline std::vector<peermatch::LearnerProfile> bundled_profiles() {
  return peermatch::parse_profiles_file(data_path("sample_profiles.csv"));
}

inline std::vector<peermatch::Preference> bundled_preferences() {
  return peermatch::parse_preferences_file(data_path("sample_preferences.csv"));
}

/// The four-learner reference matrix that ships with the sample data:
/// row 2 depends on a concept hierarchy wider than the bundled one and
/// row 4 does not follow from the sample inputs at all, so scoring tests
/// that need these exact values inject the matrix instead of recomputing.
inline peermatch::SimilarityMatrix published_matrix() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return peermatch::SimilarityMatrix::from_rows(
      {1, 2, 3, 4}, {{nan, 0.30, 0.50, 0.60},
                     {0.20, nan, 0.00, 0.15},
                     {0.25, 0.20, nan, 0.05},
                     {0.45, 0.10, 0.30, nan}});
}

/// Six-learner ranked lists (K=3) with the known metric values.
inline peermatch::RecommendationSet six_learner_lists() {
  using peermatch::RankedCandidate;
  peermatch::RecommendationSet set;
  set.k = 3;
  auto add = [&](peermatch::LearnerId owner, std::vector<peermatch::LearnerId> ids) {
    peermatch::RecommendationList list;
    list.owner = owner;
    list.k = 3;
    for (std::size_t i = 0; i < ids.size(); ++i)
      list.entries.push_back(RankedCandidate{ids[i], 0.0, static_cast<int>(i) + 1});
    set.lists.emplace(owner, std::move(list));
  };
  add(1, {2, 3, 4});
  add(2, {3, 4, 5});
  add(3, {1, 2, 4});
  add(4, {6, 5, 3});
  add(5, {1, 4, 6});
  add(6, {3, 2, 1});
  return set;
}

}  // namespace fixtures
