#include "peermatch/distance.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "generators.hpp"

using namespace peermatch;

TEST(OrdinalDistance, GapToNearestAcceptableLevel) {
  EXPECT_DOUBLE_EQ(ordinal_distance(LevelSet::single(3), 2), 0.25);
  EXPECT_DOUBLE_EQ(ordinal_distance(LevelSet::single(3), 3), 0.0);
  EXPECT_DOUBLE_EQ(ordinal_distance(LevelSet::range(3, 4), 0), 0.75);
  EXPECT_DOUBLE_EQ(ordinal_distance(LevelSet::single(0), 4), 1.0);
  EXPECT_DOUBLE_EQ(ordinal_distance(LevelSet::range(0, 4), 2), 0.0);
  EXPECT_THROW(ordinal_distance(LevelSet{}, 2), ScoringError);
}

TEST(NominalDistance, ZeroOrOne) {
  EXPECT_DOUBLE_EQ(nominal_distance(Gender::Male, Gender::Male), 0.0);
  EXPECT_DOUBLE_EQ(nominal_distance(Gender::Male, Gender::Female), 1.0);
}

TEST(LocationDistance, SameCityComparesNamesWithoutTable) {
  LocationTable empty;
  EXPECT_DOUBLE_EQ(
      location_distance(LocationScope::SameCity, "Frankfurt", "frankfurt", empty), 0.0);
  EXPECT_DOUBLE_EQ(
      location_distance(LocationScope::SameCity, "Frankfurt", "Berlin", empty), 1.0);
}

TEST(LocationDistance, CountryAndTimezoneUseTheTable) {
  auto table = fixtures::bundled_locations();
  EXPECT_DOUBLE_EQ(location_distance(LocationScope::SameTimezone, "Los Angeles", "Las Vegas",
                                     table),
                   0.0);  // distinct states, one timezone
  EXPECT_DOUBLE_EQ(
      location_distance(LocationScope::SameCountry, "Los Angeles", "Las Vegas", table), 0.0);
  EXPECT_DOUBLE_EQ(
      location_distance(LocationScope::SameCountry, "Los Angeles", "Edmonton", table), 1.0);
  EXPECT_DOUBLE_EQ(
      location_distance(LocationScope::SameTimezone, "Edmonton", "Calgary", table), 0.0);
}

TEST(LocationDistance, UnknownCityMismatchesAndFlags) {
  auto table = fixtures::bundled_locations();
  bool unknown = false;
  EXPECT_DOUBLE_EQ(location_distance(LocationScope::SameCountry, "Asgard", "Frankfurt", table,
                                     &unknown),
                   1.0);
  EXPECT_TRUE(unknown);
  // same-city never consults the table, so no flag even for unlisted names
  unknown = false;
  location_distance(LocationScope::SameCity, "Asgard", "Asgard", table, &unknown);
  EXPECT_FALSE(unknown);
}

TEST(AttributeDistances, UndefinedAttributesContributeZero) {
  auto taxonomy = fixtures::bundled_taxonomy();
  auto locations = fixtures::bundled_locations();
  ScoringContext ctx{taxonomy, locations};
  auto profiles = fixtures::bundled_profiles();

  Preference pref;  // only gender defined
  pref.learner_id = 99;
  pref.gender = Gender::Female;

  AttributeDistances v = attribute_distances(pref, "Frankfurt", profiles[0], ctx);
  EXPECT_TRUE(v.is_expressed(Attribute::Gender));
  EXPECT_DOUBLE_EQ(v.at(Attribute::Gender), 1.0);  // profile 1 is male
  for (Attribute a : {Attribute::Age, Attribute::Location, Attribute::Qualification,
                      Attribute::Interest}) {
    EXPECT_FALSE(v.is_expressed(a));
    EXPECT_DOUBLE_EQ(v.at(a), 0.0);
  }
  EXPECT_DOUBLE_EQ(distance_score(pref, "Frankfurt", profiles[0], ctx), 1.0 / 5.0);
}

TEST(DistanceScore, WorkedValuesFromBundledSample) {
  auto taxonomy = fixtures::bundled_taxonomy();
  auto locations = fixtures::bundled_locations();
  ScoringContext ctx{taxonomy, locations};
  auto profiles = fixtures::bundled_profiles();
  auto prefs = fixtures::bundled_preferences();

  auto d = [&](int pref_of, int against) {
    return distance_score(prefs[pref_of - 1], profiles[pref_of - 1].location,
                          profiles[against - 1], ctx);
  };

  // learner 1's row
  EXPECT_NEAR(d(1, 2), 0.30, 1e-9);
  EXPECT_NEAR(d(1, 3), 0.50, 1e-9);
  EXPECT_NEAR(d(1, 4), 0.60, 1e-9);
  // learner 3's row
  EXPECT_NEAR(d(3, 1), 0.25, 1e-9);
  EXPECT_NEAR(d(3, 2), 0.20, 1e-9);
  EXPECT_NEAR(d(3, 4), 0.05, 1e-9);
  // learner 4's row: qualification gaps of 2, 0, 0 against {0,1,2}
  EXPECT_NEAR(d(4, 1), 0.40, 1e-9);
  EXPECT_NEAR(d(4, 2), 0.05, 1e-9);
  EXPECT_NEAR(d(4, 3), 0.25, 1e-9);
  // learner 2's row mixes exact qualification gaps with hierarchy terms
  EXPECT_NEAR(d(2, 1), (0.5 + (1.0 - 2.0 / 7.0)) / 5.0, 1e-9);
  EXPECT_NEAR(d(2, 3), (0.0 + (1.0 - 2.0 / 5.0)) / 5.0, 1e-9);
  EXPECT_NEAR(d(2, 4), (0.25 + (1.0 - 2.0 / 3.0)) / 5.0, 1e-9);
}

TEST(SimilarityMatrix, BuildsDirectedGridWithNaNDiagonal) {
  auto taxonomy = fixtures::bundled_taxonomy();
  auto locations = fixtures::bundled_locations();
  ScoringContext ctx{taxonomy, locations};
  auto profiles = fixtures::bundled_profiles();
  auto prefs = fixtures::bundled_preferences();

  SimilarityMatrix m = build_similarity_matrix(profiles, prefs, ctx);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_NEAR(m.at(1, 2), 0.30, 1e-9);
  EXPECT_NEAR(m.at(3, 4), 0.05, 1e-9);
  EXPECT_NE(m.at(1, 2), m.at(2, 1));  // directed
  EXPECT_THROW(m.at(2, 2), ScoringError);
  EXPECT_THROW(m.at(1, 42), ScoringError);
  EXPECT_EQ(m.unknown_city_lookups(), 0u);
}

TEST(SimilarityMatrix, InputOrderDoesNotMatter) {
  auto taxonomy = fixtures::bundled_taxonomy();
  auto locations = fixtures::bundled_locations();
  ScoringContext ctx{taxonomy, locations};
  auto profiles = fixtures::bundled_profiles();
  auto prefs = fixtures::bundled_preferences();

  auto shuffled_profiles = profiles;
  auto shuffled_prefs = prefs;
  std::reverse(shuffled_profiles.begin(), shuffled_profiles.end());
  std::rotate(shuffled_prefs.begin(), shuffled_prefs.begin() + 2, shuffled_prefs.end());

  SimilarityMatrix a = build_similarity_matrix(profiles, prefs, ctx);
  SimilarityMatrix b = build_similarity_matrix(shuffled_profiles, shuffled_prefs, ctx);
  for (LearnerId x : a.ids())
    for (LearnerId y : a.ids()) {
      if (x == y) continue;
      EXPECT_EQ(a.at(x, y), b.at(x, y));
    }
}

TEST(SimilarityMatrix, ParallelBuildMatchesSequentialExactly) {
  std::mt19937_64 rng(7);
  gen::Population pop = gen::random_population(rng, 40);
  ScoringContext ctx = pop.context();
  SimilarityMatrix seq = build_similarity_matrix(pop.profiles, pop.preferences, ctx, 1);
  SimilarityMatrix par = build_similarity_matrix(pop.profiles, pop.preferences, ctx, 4);
  ASSERT_EQ(seq.size(), par.size());
  for (LearnerId x : seq.ids())
    for (LearnerId y : seq.ids()) {
      if (x == y) continue;
      EXPECT_EQ(seq.at(x, y), par.at(x, y));
    }
}

TEST(SimilarityMatrix, CountsUnknownCityLookups) {
  auto taxonomy = fixtures::bundled_taxonomy();
  auto locations = fixtures::bundled_locations();
  ScoringContext ctx{taxonomy, locations};
  auto profiles = fixtures::bundled_profiles();
  auto prefs = fixtures::bundled_preferences();
  profiles[0].location = "Nowhere";  // learner 1 moves off the map

  SimilarityMatrix m = build_similarity_matrix(profiles, prefs, ctx);
  // learner 4's same-timezone preference now hits an unknown city
  EXPECT_GT(m.unknown_city_lookups(), 0u);
  EXPECT_NEAR(m.at(4, 1), 0.40, 1e-9);  // mismatch either way for learner 4 vs 1
}

TEST(SimilarityMatrix, RejectsMismatchedRecords) {
  auto taxonomy = fixtures::bundled_taxonomy();
  auto locations = fixtures::bundled_locations();
  ScoringContext ctx{taxonomy, locations};
  auto profiles = fixtures::bundled_profiles();
  auto prefs = fixtures::bundled_preferences();

  auto no_pref = prefs;
  no_pref.pop_back();
  EXPECT_THROW(build_similarity_matrix(profiles, no_pref, ctx), ScoringError);
  auto no_profile = profiles;
  no_profile.pop_back();
  EXPECT_THROW(build_similarity_matrix(no_profile, prefs, ctx), ScoringError);
}

TEST(SimilarityMatrix, FromRowsValidatesShape) {
  EXPECT_THROW(SimilarityMatrix::from_rows({2, 1}, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(SimilarityMatrix::from_rows({1, 2}, {{0, 1}}), Error);
  EXPECT_THROW(SimilarityMatrix::from_rows({1, 2}, {{0, 1, 2}, {1, 0, 2}}), Error);
  SimilarityMatrix m = fixtures::published_matrix();
  EXPECT_DOUBLE_EQ(m.at(1, 4), 0.60);
  EXPECT_DOUBLE_EQ(m.at(2, 3), 0.00);
}
