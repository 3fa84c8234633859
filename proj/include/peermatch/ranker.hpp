#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "peermatch/distance.hpp"

namespace peermatch {

/// Stand-in for exact-zero distances so the harmonic mean stays defined.
inline constexpr double kZeroReplacement = 0.001;

/// Harmonic mean of two distance scores. Only exact zeros are replaced;
/// values in (0, 0.001) are used as-is.
inline double harmonic_mean(double a, double b) {
  if (a == 0.0) a = kZeroReplacement;
  if (b == 0.0) b = kZeroReplacement;
  return 2.0 * a * b / (a + b);
}

/// Symmetric pair score: harmonic mean of the two directed distances.
struct ReciprocalScore {
  LearnerId other = 0;
  double forward = 0.0;   // distance of x's preferences to other's attributes
  double backward = 0.0;  // distance of other's preferences to x's attributes
  double value = 0.0;
};

/// One score per other learner, ascending by id.
inline std::vector<ReciprocalScore> reciprocal_scores(LearnerId x, const SimilarityMatrix& m) {
  if (!m.contains(x)) throw ScoringError("learner id " + std::to_string(x) + " not in matrix");
  std::vector<ReciprocalScore> out;
  out.reserve(m.size() > 0 ? m.size() - 1 : 0);
  for (LearnerId y : m.ids()) {
    if (y == x) continue;
    ReciprocalScore s;
    s.other = y;
    s.forward = m.at(x, y);
    s.backward = m.at(y, x);
    s.value = harmonic_mean(s.forward, s.backward);
    out.push_back(s);
  }
  return out;
}

struct RankedCandidate {
  LearnerId id = 0;
  double score = 0.0;
  int rank = 0;  // 1-based list position

  friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

/// Ranked top-K list for one learner. `k` is the requested length; the list
/// is shorter only when fewer than k candidates exist.
struct RecommendationList {
  LearnerId owner = 0;
  int k = 0;
  std::vector<RankedCandidate> entries;

  const RankedCandidate* find(LearnerId candidate) const {
    for (const auto& e : entries)
      if (e.id == candidate) return &e;
    return nullptr;
  }

  friend bool operator==(const RecommendationList&, const RecommendationList&) = default;
};

namespace detail {

inline void assign_ranks(RecommendationList& list) {
  for (std::size_t i = 0; i < list.entries.size(); ++i)
    list.entries[i].rank = static_cast<int>(i) + 1;
}

/// Ascending by (score, id): lower distance is better, ids break ties.
inline void sort_candidates(std::vector<RankedCandidate>& entries) {
  std::sort(entries.begin(), entries.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.id < b.id;
  });
}

}  // namespace detail

/// Top-K by reciprocal score, ascending (lower distance = better match).
/// K larger than the candidate pool is clipped.
inline RecommendationList top_k(LearnerId x, int k, const SimilarityMatrix& m) {
  if (k < 1) throw ScoringError("k must be >= 1");
  RecommendationList list;
  list.owner = x;
  list.k = k;
  for (const ReciprocalScore& s : reciprocal_scores(x, m))
    list.entries.push_back(RankedCandidate{s.other, s.value, 0});
  detail::sort_candidates(list.entries);
  if (list.entries.size() > static_cast<std::size_t>(k)) list.entries.resize(k);
  detail::assign_ranks(list);
  return list;
}

/// True iff the candidate sits at distance exactly 0 on that attribute of
/// x's preference. `attribute` must be defined by the preference.
inline bool priority_satisfied(const Preference& pref, Attribute attribute,
                               const std::string& owner_city, const LearnerProfile& candidate,
                               const ScoringContext& ctx) {
  if (!pref.defines(attribute))
    throw ScoringError("priority check on undefined attribute '" + attribute_code(attribute) +
                       "'");
  AttributeDistances v = attribute_distances(pref, owner_city, candidate, ctx);
  return v.at(attribute) == 0.0;
}

/// Stable re-rank of an already-truncated list: candidates violating fewer
/// of the owner's priority attributes move up; ties keep score order.
inline RecommendationList priority_rerank(
    RecommendationList list, const Preference& pref,
    const std::map<LearnerId, const LearnerProfile*>& profile_index, const ScoringContext& ctx) {
  if (pref.priorities.empty()) return list;
  auto owner_it = profile_index.find(list.owner);
  if (owner_it == profile_index.end())
    throw ScoringError("no profile for list owner " + std::to_string(list.owner));
  const std::string& owner_city = owner_it->second->location;

  std::vector<int> unsatisfied(list.entries.size(), 0);
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    auto it = profile_index.find(list.entries[i].id);
    if (it == profile_index.end())
      throw ScoringError("no profile for candidate " + std::to_string(list.entries[i].id));
    AttributeDistances v = attribute_distances(pref, owner_city, *it->second, ctx);
    for (Attribute a : pref.priorities.to_vector())
      if (v.at(a) != 0.0) ++unsatisfied[i];
  }

  std::vector<std::size_t> order(list.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return unsatisfied[a] < unsatisfied[b]; });

  std::vector<RankedCandidate> reordered;
  reordered.reserve(list.entries.size());
  for (std::size_t i : order) reordered.push_back(list.entries[i]);
  list.entries = std::move(reordered);
  detail::assign_ranks(list);
  return list;
}

inline RecommendationList priority_rerank(RecommendationList list, const Preference& pref,
                                          std::span<const LearnerProfile> profiles,
                                          const ScoringContext& ctx) {
  if (pref.priorities.empty()) return list;
  return priority_rerank(std::move(list), pref, index_profiles(profiles), ctx);
}

/// Per-learner top-K and re-rank over a prebuilt matrix; lets callers amortize
/// the matrix across several K values.
inline std::map<LearnerId, RecommendationList> recommend_all(
    const SimilarityMatrix& m, const std::map<LearnerId, const LearnerProfile*>& profile_index,
    const std::map<LearnerId, const Preference*>& pref_index, int k, const ScoringContext& ctx) {
  std::map<LearnerId, RecommendationList> out;
  for (LearnerId x : m.ids()) {
    auto pref_it = pref_index.find(x);
    if (pref_it == pref_index.end())
      throw ScoringError("no preference record for learner " + std::to_string(x));
    RecommendationList list = top_k(x, k, m);
    list = priority_rerank(std::move(list), *pref_it->second, profile_index, ctx);
    out.emplace(x, std::move(list));
  }
  return out;
}

/// Full pipeline: one matrix build, then per-learner top-K and re-rank.
/// Deterministic regardless of how the matrix build was scheduled.
inline std::map<LearnerId, RecommendationList> recommend_all(
    std::span<const LearnerProfile> profiles, std::span<const Preference> preferences, int k,
    const ScoringContext& ctx) {
  SimilarityMatrix m = build_similarity_matrix(profiles, preferences, ctx);
  return recommend_all(m, index_profiles(profiles), index_preferences(preferences), k, ctx);
}

}  // namespace peermatch
