#pragma once

#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "peermatch/ranker.hpp"

namespace peermatch {

/// A full run's ranked lists: one list per learner, all with the same
/// requested K.
struct RecommendationSet {
  int k = 0;
  std::map<LearnerId, RecommendationList> lists;

  std::size_t learner_count() const { return lists.size(); }

  const RecommendationList& list_of(LearnerId x) const {
    auto it = lists.find(x);
    if (it == lists.end())
      throw ScoringError("no recommendation list for learner " + std::to_string(x));
    return it->second;
  }

  static RecommendationSet from_lists(std::map<LearnerId, RecommendationList> lists, int k) {
    RecommendationSet set;
    set.k = k;
    set.lists = std::move(lists);
    return set;
  }
};

/// y is a successful recommendation for x iff each appears in the other's
/// top-K list. Symmetric by construction.
inline bool is_successful(LearnerId x, LearnerId y, const RecommendationSet& recs) {
  return recs.list_of(x).find(y) != nullptr && recs.list_of(y).find(x) != nullptr;
}

/// Reciprocity rank-alignment credit: 1/(1+|rank difference|) when the pair
/// is mutual, 0 when u is not in i's list. `i` must be in u's list.
inline double gain(LearnerId u, LearnerId i, const RecommendationSet& recs) {
  const RankedCandidate* in_u = recs.list_of(u).find(i);
  if (in_u == nullptr)
    throw ScoringError("gain: learner " + std::to_string(i) + " is not recommended to " +
                       std::to_string(u));
  const RankedCandidate* in_i = recs.list_of(i).find(u);
  if (in_i == nullptr) return 0.0;
  int diff = in_u->rank - in_i->rank;
  return 1.0 / (1.0 + std::abs(diff));
}

/// Per-learner evaluation row.
struct LearnerMetrics {
  LearnerId id = 0;
  int successes = 0;       // N_x
  int recommended_by = 0;  // N*_x: learners whose list contains x
  double precision = 0.0;  // N_x / K
  double recall = 0.0;     // N_x / N*_x, 0 when N*_x = 0
  double dcg = 0.0;        // sum of gains over the list / N_x, 0 when N_x = 0
};

/// Aggregated reciprocity metrics for one (model, K) run.
struct EvalReport {
  std::string model;  // "reciprocal", "baseline" or "supplied"
  int k = 0;
  std::size_t m = 0;  // learner count
  std::vector<LearnerMetrics> per_learner;  // ascending by id
  double precision = 0.0;
  double recall = 0.0;
  double dcg = 0.0;
  double dcg_star = 0.0;  // share of learners with at least one success
  double ndcg = 0.0;
};

/// Computes every metric in one pass over the lists.
inline EvalReport evaluate(const RecommendationSet& recs, std::string model_tag) {
  EvalReport report;
  report.model = std::move(model_tag);
  report.k = recs.k;
  report.m = recs.learner_count();
  if (report.m == 0) return report;
  if (recs.k < 1) throw ScoringError("evaluation needs K >= 1");

  // recommended_by counts need a pass over all lists first.
  std::map<LearnerId, int> recommended_by;
  for (const auto& [x, list] : recs.lists) recommended_by[x] = 0;
  for (const auto& [x, list] : recs.lists) {
    for (const auto& e : list.entries) {
      auto it = recommended_by.find(e.id);
      if (it == recommended_by.end())
        throw ScoringError("candidate " + std::to_string(e.id) +
                           " has no recommendation list of their own");
      ++it->second;
    }
  }

  double sum_p = 0.0, sum_r = 0.0, sum_dcg = 0.0;
  std::size_t with_success = 0;
  for (const auto& [x, list] : recs.lists) {
    LearnerMetrics row;
    row.id = x;
    row.recommended_by = recommended_by.at(x);
    double gain_sum = 0.0;
    for (const auto& e : list.entries) {
      const RankedCandidate* back = recs.list_of(e.id).find(x);
      if (back != nullptr) {
        ++row.successes;
        int diff = e.rank - back->rank;
        gain_sum += 1.0 / (1.0 + std::abs(diff));
      }
    }
    row.precision = static_cast<double>(row.successes) / recs.k;
    row.recall = row.recommended_by == 0
                     ? 0.0
                     : static_cast<double>(row.successes) / row.recommended_by;
    row.dcg = row.successes == 0 ? 0.0 : gain_sum / row.successes;
    if (row.successes > 0) ++with_success;
    sum_p += row.precision;
    sum_r += row.recall;
    sum_dcg += row.dcg;
    report.per_learner.push_back(row);
  }

  double m = static_cast<double>(report.m);
  report.precision = sum_p / m;
  report.recall = sum_r / m;
  report.dcg = sum_dcg / m;
  report.dcg_star = static_cast<double>(with_success) / m;
  report.ndcg = report.dcg_star == 0.0 ? 0.0 : report.dcg / report.dcg_star;
  return report;
}

/// Precision/recall slice of evaluate(), kept as its own entry point.
struct PrecisionRecall {
  std::map<LearnerId, double> precision, recall;
  double aggregate_precision = 0.0, aggregate_recall = 0.0;
};

inline PrecisionRecall precision_recall(const RecommendationSet& recs) {
  EvalReport report = evaluate(recs, "adhoc");
  PrecisionRecall out;
  for (const auto& row : report.per_learner) {
    out.precision[row.id] = row.precision;
    out.recall[row.id] = row.recall;
  }
  out.aggregate_precision = report.precision;
  out.aggregate_recall = report.recall;
  return out;
}

/// Per-learner and aggregate DCG slice of evaluate().
struct DcgResult {
  std::map<LearnerId, double> per_learner;
  double aggregate = 0.0;
};

inline DcgResult dcg(const RecommendationSet& recs) {
  EvalReport report = evaluate(recs, "adhoc");
  DcgResult out;
  for (const auto& row : report.per_learner) out.per_learner[row.id] = row.dcg;
  out.aggregate = report.dcg;
  return out;
}

inline double ndcg(const RecommendationSet& recs) { return evaluate(recs, "adhoc").ndcg; }

/// Reciprocal model over a prebuilt matrix.
inline RecommendationSet reciprocal_recommend(
    const SimilarityMatrix& m, const std::map<LearnerId, const LearnerProfile*>& profile_index,
    const std::map<LearnerId, const Preference*>& pref_index, int k, const ScoringContext& ctx) {
  return RecommendationSet::from_lists(recommend_all(m, profile_index, pref_index, k, ctx), k);
}

/// Reciprocal model: recommend_all packaged as a RecommendationSet.
inline RecommendationSet reciprocal_recommend(std::span<const LearnerProfile> profiles,
                                              std::span<const Preference> preferences, int k,
                                              const ScoringContext& ctx) {
  return RecommendationSet::from_lists(recommend_all(profiles, preferences, k, ctx), k);
}

/// Baseline model over a prebuilt matrix: ranks by the one-directional
/// matrix row only, ignoring reciprocity. Priority re-ranking still applies,
/// so the two models differ in their sort key alone.
inline RecommendationSet baseline_recommend(
    const SimilarityMatrix& m, const std::map<LearnerId, const LearnerProfile*>& profile_index,
    const std::map<LearnerId, const Preference*>& pref_index, int k, const ScoringContext& ctx) {
  if (k < 1) throw ScoringError("k must be >= 1");
  RecommendationSet set;
  set.k = k;
  for (LearnerId x : m.ids()) {
    auto pref_it = pref_index.find(x);
    if (pref_it == pref_index.end())
      throw ScoringError("no preference record for learner " + std::to_string(x));
    RecommendationList list;
    list.owner = x;
    list.k = k;
    for (LearnerId y : m.ids()) {
      if (y == x) continue;
      list.entries.push_back(RankedCandidate{y, m.at(x, y), 0});
    }
    detail::sort_candidates(list.entries);
    if (list.entries.size() > static_cast<std::size_t>(k)) list.entries.resize(k);
    detail::assign_ranks(list);
    list = priority_rerank(std::move(list), *pref_it->second, profile_index, ctx);
    set.lists.emplace(x, std::move(list));
  }
  return set;
}

inline RecommendationSet baseline_recommend(std::span<const LearnerProfile> profiles,
                                            std::span<const Preference> preferences, int k,
                                            const ScoringContext& ctx) {
  SimilarityMatrix m = build_similarity_matrix(profiles, preferences, ctx);
  return baseline_recommend(m, index_profiles(profiles), index_preferences(preferences), k, ctx);
}

}  // namespace peermatch
