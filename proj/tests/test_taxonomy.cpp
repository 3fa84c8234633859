#include "peermatch/taxonomy.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace peermatch;

namespace {

Taxonomy seven() { return fixtures::concept_tree(); }

}  // namespace

TEST(Taxonomy, DepthsCountFromRootAtOne) {
  Taxonomy t = seven();
  EXPECT_EQ(t.depth(t.root()), 1);
  EXPECT_EQ(t.depth(t.require("sports")), 2);
  EXPECT_EQ(t.depth(t.require("Football")), 3);
  EXPECT_EQ(t.depth(t.require("AI")), 3);
  EXPECT_EQ(t.depth(t.require("ML")), 4);
}

TEST(Taxonomy, FindIsCaseInsensitive) {
  Taxonomy t = seven();
  EXPECT_EQ(t.find("football"), t.find("Football"));
  EXPECT_EQ(t.find("FOOTBALL"), t.find("Football"));
  EXPECT_EQ(t.find("chess"), Taxonomy::kNoNode);
  EXPECT_THROW(t.require("chess"), ScoringError);
}

TEST(Taxonomy, LcsClimbsToNearestSharedAncestor) {
  Taxonomy t = seven();
  EXPECT_EQ(t.lcs(t.require("Football"), t.require("Soccer")), t.require("sports"));
  EXPECT_EQ(t.lcs(t.require("Football"), t.require("ML")), t.root());
  // identity and ancestor cases
  EXPECT_EQ(t.lcs(t.require("AI"), t.require("AI")), t.require("AI"));
  EXPECT_EQ(t.lcs(t.require("science"), t.require("ML")), t.require("science"));
}

TEST(Taxonomy, WuPalmerWorkedValues) {
  Taxonomy t = seven();
  // siblings at depth 3 under depth-2 parent
  EXPECT_DOUBLE_EQ(t.wu_palmer(t.require("Football"), t.require("Soccer")), 2.0 * 2 / (3 + 3));
  // cross-branch pair joined only at the root
  EXPECT_DOUBLE_EQ(t.wu_palmer(t.require("Soccer"), t.require("ML")), 2.0 * 1 / (3 + 4));
  // identical concepts
  EXPECT_DOUBLE_EQ(t.wu_palmer(t.require("AI"), t.require("AI")), 1.0);
  // ancestor pair: lcs is the ancestor itself
  EXPECT_DOUBLE_EQ(t.wu_palmer(t.require("science"), t.require("ML")), 2.0 * 2 / (2 + 4));
  // string overload folds case
  EXPECT_DOUBLE_EQ(t.wu_palmer("soccer", "FOOTBALL"), 2.0 / 3.0);
}

TEST(Taxonomy, LeavesListsChildlessNodes) {
  Taxonomy t = seven();
  std::vector<std::string> names = t.leaves();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"ML", "football", "soccer"}));
}

TEST(Taxonomy, LoadsEdgeListText) {
  std::istringstream in(
      "# parent,child\n"
      "root,a\n"
      "root,b\n"
      "a,c\n");
  Taxonomy t = Taxonomy::load(in);
  EXPECT_EQ(t.depth(t.require("c")), 3);
  EXPECT_EQ(t.name(t.root()), "root");
}

TEST(Taxonomy, BundledHierarchyPreservesKeyAncestry) {
  Taxonomy t = fixtures::bundled_taxonomy();
  EXPECT_EQ(t.lcs(t.require("Football"), t.require("Soccer")), t.require("sports"));
  EXPECT_EQ(t.name(t.parent(t.require("ML"))), "AI");
  EXPECT_EQ(t.name(t.parent(t.require("AI"))), "science");
  EXPECT_EQ(t.name(t.parent(t.require("sociology"))), "science");
  EXPECT_DOUBLE_EQ(t.wu_palmer("Football", "Soccer"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.wu_palmer("AI", "ML"), 2.0 * 3 / (3 + 4));
}

TEST(Taxonomy, RejectsMalformedHierarchies) {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return Taxonomy::load(in);
  };
  EXPECT_THROW(load(""), ParseError);                       // empty
  EXPECT_THROW(load("a,b\nc,d\n"), ParseError);             // two roots
  EXPECT_THROW(load("a,b\nb,a\n"), ParseError);             // cycle
  EXPECT_THROW(load("a,b\nc,b\n"), ParseError);             // conflicting parents
  EXPECT_THROW(load("a,B\nc,b\n"), ParseError);             // ditto after case folding
  EXPECT_THROW(load("a,a\n"), ParseError);                  // self-edge
  EXPECT_NO_THROW(load("a,b\na,b\n"));                      // repeated edge is idempotent
}

TEST(Taxonomy, InterestDistanceTakesBestCrossPair) {
  Taxonomy t = seven();
  // {Soccer, AI} vs {ML}: Soccer-ML joins at the root (2/7), AI-ML at AI (6/7)
  std::vector<std::string> pref{"Soccer", "AI"};
  std::vector<std::string> profile{"ML"};
  EXPECT_DOUBLE_EQ(t.wu_palmer("Soccer", "ML"), 2.0 / 7.0);
  EXPECT_DOUBLE_EQ(t.wu_palmer("AI", "ML"), 6.0 / 7.0);
  EXPECT_DOUBLE_EQ(t.interest_distance(pref, profile), 1.0 - 6.0 / 7.0);
  // a shared concept pins the distance at zero
  std::vector<std::string> same{"ml"};
  EXPECT_DOUBLE_EQ(t.interest_distance(same, profile), 0.0);
  EXPECT_THROW(t.interest_distance({}, profile), ScoringError);
}
