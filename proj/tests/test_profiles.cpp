#include "peermatch/profiles.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "peermatch/locations.hpp"
#include "peermatch/preferences.hpp"

using namespace peermatch;

TEST(ProfileParsing, ReadsBundledSample) {
  auto profiles = fixtures::bundled_profiles();
  ASSERT_EQ(profiles.size(), 4u);
  EXPECT_EQ(profiles[0].id, 1u);
  EXPECT_EQ(profiles[0].age, 32);
  EXPECT_EQ(profiles[0].gender, Gender::Male);
  EXPECT_EQ(profiles[0].location, "Frankfurt");
  EXPECT_EQ(profiles[0].qualification.code, 4);
  EXPECT_EQ(profiles[0].interests, (std::vector<std::string>{"ML"}));
  EXPECT_EQ(profiles[0].courses,
            (std::vector<std::string>{"machine learning", "java", "python"}));
  EXPECT_EQ(profiles[3].interests, (std::vector<std::string>{"Soccer", "AI"}));
}

TEST(ProfileParsing, RoundTripsThroughSerializer) {
  auto profiles = fixtures::bundled_profiles();
  std::string text = serialize_profiles(profiles);
  std::istringstream in(text);
  EXPECT_EQ(parse_profiles(in), profiles);
}

TEST(ProfileParsing, HeaderColumnsMayBeReordered) {
  std::istringstream in("age,id,gen,loc,qua,int\n40,7,F,Paris,Masters,physics\n");
  auto profiles = parse_profiles(in);
  ASSERT_EQ(profiles.size(), 1u);
  EXPECT_EQ(profiles[0].id, 7u);
  EXPECT_EQ(profiles[0].age, 40);
  EXPECT_TRUE(profiles[0].courses.empty());
}

TEST(ProfileParsing, RejectsBadRows) {
  auto parse = [](const std::string& body) {
    std::istringstream in("id,age,gen,loc,qua,int\n" + body);
    return parse_profiles(in);
  };
  EXPECT_THROW(parse("1,abc,M,Paris,Masters,physics\n"), ParseError);  // non-numeric age
  EXPECT_THROW(parse("1,30,K,Paris,Masters,physics\n"), ParseError);   // bad gender
  EXPECT_THROW(parse("1,30,M,Paris,BSc,physics\n"), ParseError);       // bad qualification
  EXPECT_THROW(parse("1,30,M,Paris,Masters,\n"), ParseError);          // empty interests
  EXPECT_THROW(parse("1,30,M,Paris,Masters,ai\n1,22,F,Rome,Bachelors,ai\n"),
               ParseError);  // duplicate id
  std::istringstream missing("id,age,gen,loc,qua\n1,30,M,Paris,Masters\n");
  EXPECT_THROW(parse_profiles(missing), ParseError);  // missing `int` column
}

TEST(PreferenceParsing, ReadsBundledSample) {
  auto prefs = fixtures::bundled_preferences();
  ASSERT_EQ(prefs.size(), 4u);

  const Preference& p1 = prefs[0];
  EXPECT_EQ(p1.age_levels, LevelSet::single(3));  // 30-35
  EXPECT_EQ(p1.gender, Gender::Male);
  EXPECT_EQ(p1.location, LocationScope::SameCity);
  EXPECT_EQ(p1.qualification_levels, LevelSet::range(3, 4));  // >=Masters
  EXPECT_FALSE(p1.interests.has_value());
  EXPECT_EQ(p1.priorities.to_vector(),
            (std::vector<Attribute>{Attribute::Age, Attribute::Gender}));

  const Preference& p2 = prefs[1];
  EXPECT_EQ(p2.defined_count(), 2);
  EXPECT_EQ(p2.qualification_levels, LevelSet::single(2));
  EXPECT_EQ(p2.interests, (std::vector<std::string>{"Football"}));
  EXPECT_TRUE(p2.priorities.empty());

  const Preference& p4 = prefs[3];
  EXPECT_EQ(p4.age_levels, LevelSet::range(0, 1));            // <=25
  EXPECT_EQ(p4.qualification_levels, LevelSet::range(0, 2));  // <=Bachelors
  EXPECT_EQ(p4.location, LocationScope::SameTimezone);
}

TEST(PreferenceParsing, ThresholdExpansion) {
  auto parse_one = [](const std::string& age, const std::string& qua) {
    std::istringstream in("id,age,gen,loc,qua,int,priority\n9," + age + ",x,x," + qua + ",x,x\n");
    return parse_preferences(in)[0];
  };
  EXPECT_EQ(parse_one("<=25", "x").age_levels, LevelSet::range(0, 1));
  EXPECT_EQ(parse_one(">=25", "x").age_levels, LevelSet::range(2, 4));
  EXPECT_EQ(parse_one("<=20", "x").age_levels, LevelSet::single(0));
  EXPECT_EQ(parse_one("35+", "x").age_levels, LevelSet::single(4));
  EXPECT_EQ(parse_one("20-25;30-35", "x").age_levels, ([] {
              LevelSet s;
              s.insert(1);
              s.insert(3);
              return s;
            })());
  EXPECT_EQ(parse_one("x", ">=Masters").qualification_levels, LevelSet::range(3, 4));
  EXPECT_EQ(parse_one("x", "<=Bachelors").qualification_levels, LevelSet::range(0, 2));
  EXPECT_EQ(parse_one("x", "Secondary;Doctorate").qualification_levels, ([] {
              LevelSet s;
              s.insert(1);
              s.insert(4);
              return s;
            })());
}

TEST(PreferenceParsing, RejectsBadCells) {
  auto parse = [](const std::string& body) {
    std::istringstream in("id,age,gen,loc,qua,int,priority\n" + body);
    return parse_preferences(in);
  };
  EXPECT_THROW(parse("1,18-22,x,x,x,x,x\n"), ParseError);    // not a band
  EXPECT_THROW(parse("1,<=0,x,x,x,x,x\n"), ParseError);      // degenerate threshold
  EXPECT_THROW(parse("1,x,x,everywhere,x,x,x\n"), ParseError);
  EXPECT_THROW(parse("1,x,x,x,x,x,x\n"), ParseError);        // nothing defined at all
  EXPECT_THROW(parse("1,x,M,x,x,x,age\n"), ParseError);      // priority on undefined attribute
  EXPECT_THROW(parse("1,x,x,x,x,ai,int\n1,x,x,x,x,ai,x\n"), ParseError);  // duplicate id
}

TEST(PreferenceParsing, RoundTripsThroughSerializer) {
  auto prefs = fixtures::bundled_preferences();
  std::string text = serialize_preferences(prefs);
  std::istringstream in(text);
  EXPECT_EQ(parse_preferences(in), prefs);
}

TEST(LocationTable, LookupIsCaseAndSpaceInsensitive) {
  auto table = fixtures::bundled_locations();
  const LocationInfo* la = table.find("los angeles");
  ASSERT_NE(la, nullptr);
  EXPECT_EQ(la->country, "United States");
  const LocationInfo* lv = table.find("LAS VEGAS");
  ASSERT_NE(lv, nullptr);
  EXPECT_EQ(lv->timezone, la->timezone);  // both Pacific
  EXPECT_EQ(table.find("Atlantis"), nullptr);
}

TEST(LocationTable, RejectsMalformedRows) {
  std::istringstream short_row("city,country,timezone\nParis,France\n");
  EXPECT_THROW(LocationTable::load(short_row), ParseError);
  std::istringstream dup("Paris,France,Europe/Paris\nparis,France,Europe/Paris\n");
  EXPECT_THROW(LocationTable::load(dup), ParseError);
}
