#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "peermatch/core.hpp"
#include "peermatch/locations.hpp"
#include "peermatch/preferences.hpp"
#include "peermatch/profiles.hpp"
#include "peermatch/taxonomy.hpp"

namespace peermatch {

/// Everything scoring needs besides the learners themselves.
struct ScoringContext {
  const Taxonomy& taxonomy;
  const LocationTable& locations;
};

/// Gap to the nearest acceptable level, normalized by the maximum gap.
inline double ordinal_distance(const LevelSet& pref_levels, int value,
                               int max_gap = kMaxOrdinalGap) {
  if (pref_levels.empty()) throw ScoringError("ordinal distance over empty level set");
  return static_cast<double>(pref_levels.min_gap(value)) / max_gap;
}

/// 0 iff equal, 1 otherwise.
inline double nominal_distance(Gender pref, Gender actual) { return pref == actual ? 0.0 : 1.0; }

/// 0 iff the two cities agree under the scope. Same-city compares the city
/// names directly; country/timezone need the table, and a city missing from
/// it counts as a mismatch (`unknown_city` is set for diagnostics).
inline double location_distance(LocationScope scope, const std::string& city_x,
                                const std::string& city_y, const LocationTable& table,
                                bool* unknown_city = nullptr) {
  if (scope == LocationScope::SameCity)
    return detail::fold(city_x) == detail::fold(city_y) ? 0.0 : 1.0;
  const LocationInfo* x = table.find(city_x);
  const LocationInfo* y = table.find(city_y);
  if (x == nullptr || y == nullptr) {
    if (unknown_city != nullptr) *unknown_city = true;
    return 1.0;
  }
  if (scope == LocationScope::SameCountry)
    return detail::fold(x->country) == detail::fold(y->country) ? 0.0 : 1.0;
  return detail::fold(x->timezone) == detail::fold(y->timezone) ? 0.0 : 1.0;
}

/// The five per-attribute distances for one (preference, profile) pair.
/// Undefined preference attributes contribute 0 and are flagged.
struct AttributeDistances {
  std::array<double, kAttributeCount> d{};
  std::array<bool, kAttributeCount> expressed{};
  bool unknown_city = false;

  double at(Attribute a) const { return d[static_cast<std::size_t>(a)]; }
  bool is_expressed(Attribute a) const { return expressed[static_cast<std::size_t>(a)]; }
};

/// A location preference is relative to where its owner lives, so the
/// owner's city rides along with the preference.
inline AttributeDistances attribute_distances(const Preference& pref,
                                              const std::string& owner_city,
                                              const LearnerProfile& profile,
                                              const ScoringContext& ctx) {
  AttributeDistances out;
  auto set = [&](Attribute a, double value) {
    out.d[static_cast<std::size_t>(a)] = value;
    out.expressed[static_cast<std::size_t>(a)] = true;
  };
  if (pref.age_levels)
    set(Attribute::Age, ordinal_distance(*pref.age_levels, profile.age_level().code));
  if (pref.gender) set(Attribute::Gender, nominal_distance(*pref.gender, profile.gender));
  if (pref.location)
    set(Attribute::Location, location_distance(*pref.location, owner_city, profile.location,
                                               ctx.locations, &out.unknown_city));
  if (pref.qualification_levels)
    set(Attribute::Qualification,
        ordinal_distance(*pref.qualification_levels, profile.qualification.code));
  if (pref.interests)
    set(Attribute::Interest, ctx.taxonomy.interest_distance(*pref.interests, profile.interests));
  return out;
}

/// Eq.-style mean distance: the five attribute distances summed in attribute
/// order and divided by the fixed N = 5. Undefined attributes add 0.
inline double distance_score(const Preference& pref, const std::string& owner_city,
                             const LearnerProfile& profile, const ScoringContext& ctx) {
  AttributeDistances v = attribute_distances(pref, owner_city, profile, ctx);
  double sum = 0.0;
  for (std::size_t i = 0; i < kAttributeCount; ++i) sum += v.d[i];
  return sum / kAttributeCount;
}

/// M x M grid of directed distance scores. Row = preference owner, column =
/// profile owner; the diagonal is undefined and stored as NaN.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;

  /// Builds from explicit per-row values (tests, fixtures). `ids` must be
  /// strictly ascending; `rows[i][j]` is the score of preference owner
  /// ids[i] against profile owner ids[j]; diagonal values are ignored.
  static SimilarityMatrix from_rows(std::vector<LearnerId> ids,
                                    const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 1; i < ids.size(); ++i)
      if (ids[i - 1] >= ids[i]) throw Error("matrix ids must be strictly ascending");
    SimilarityMatrix m(std::move(ids));
    if (rows.size() != m.ids_.size())
      throw Error("matrix rows do not match id count");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.ids_.size()) throw Error("matrix row has wrong width");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        if (i != j) m.cells_[i * m.ids_.size() + j] = rows[i][j];
    }
    return m;
  }

  std::size_t size() const { return ids_.size(); }
  std::span<const LearnerId> ids() const { return ids_; }

  bool contains(LearnerId id) const { return index_.count(id) > 0; }

  /// Directed score: how well y's attributes satisfy x's preferences.
  double at(LearnerId x, LearnerId y) const {
    std::size_t i = index_of(x);
    std::size_t j = index_of(y);
    if (i == j) throw ScoringError("matrix diagonal is undefined (learner " +
                                   std::to_string(x) + ")");
    return cells_[i * ids_.size() + j];
  }

  /// Unknown-city lookups observed while building; 0 for fixture matrices.
  std::size_t unknown_city_lookups() const { return unknown_city_lookups_; }

 private:
  explicit SimilarityMatrix(std::vector<LearnerId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!index_.emplace(ids_[i], i).second)
        throw ScoringError("duplicate learner id " + std::to_string(ids_[i]));
    }
    cells_.assign(ids_.size() * ids_.size(), std::numeric_limits<double>::quiet_NaN());
  }

  std::size_t index_of(LearnerId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw ScoringError("learner id " + std::to_string(id) + " not in matrix");
    return it->second;
  }

  std::vector<LearnerId> ids_;  // ascending
  std::unordered_map<LearnerId, std::size_t> index_;
  std::vector<double> cells_;
  std::size_t unknown_city_lookups_ = 0;

  friend SimilarityMatrix build_similarity_matrix(std::span<const LearnerProfile>,
                                                  std::span<const Preference>,
                                                  const ScoringContext&, unsigned);
};

/// Computes every directed pair score. Rows may be computed in parallel;
/// each cell is written exactly once with no cross-cell arithmetic, so the
/// result is identical to the sequential build.
inline SimilarityMatrix build_similarity_matrix(std::span<const LearnerProfile> profiles,
                                                std::span<const Preference> preferences,
                                                const ScoringContext& ctx,
                                                unsigned threads = 0) {
  auto profile_index = index_profiles(profiles);
  auto pref_index = index_preferences(preferences);
  for (const auto& [id, profile] : profile_index)
    if (pref_index.count(id) == 0)
      throw ScoringError("profile " + std::to_string(id) + " has no preference record");
  for (const auto& [id, pref] : pref_index)
    if (profile_index.count(id) == 0)
      throw ScoringError("preference " + std::to_string(id) + " has no profile record");

  std::vector<LearnerId> ids;
  ids.reserve(profile_index.size());
  for (const auto& [id, profile] : profile_index) ids.push_back(id);

  SimilarityMatrix m(ids);
  const std::size_t n = m.ids_.size();
  std::vector<const LearnerProfile*> by_index(n);
  std::vector<const Preference*> pref_by_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_index[i] = profile_index.at(m.ids_[i]);
    pref_by_index[i] = pref_index.at(m.ids_[i]);
  }

  std::atomic<std::size_t> unknown_city{0};
  auto fill_rows = [&](std::size_t begin, std::size_t end) {
    std::size_t local_unknown = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const Preference& pref = *pref_by_index[i];
      const std::string& owner_city = by_index[i]->location;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        AttributeDistances v = attribute_distances(pref, owner_city, *by_index[j], ctx);
        if (v.unknown_city) ++local_unknown;
        double sum = 0.0;
        for (std::size_t k = 0; k < kAttributeCount; ++k) sum += v.d[k];
        m.cells_[i * n + j] = sum / kAttributeCount;
      }
    }
    unknown_city.fetch_add(local_unknown, std::memory_order_relaxed);
  };

  unsigned worker_count = threads;
  if (worker_count == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    worker_count = n >= 64 && hw > 1 ? hw : 1;
  }
  if (worker_count <= 1 || n < 2) {
    fill_rows(0, n);
  } else {
    std::vector<std::thread> workers;
    std::size_t chunk = (n + worker_count - 1) / worker_count;
    for (unsigned w = 0; w < worker_count; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(fill_rows, begin, end);
    }
    for (auto& t : workers) t.join();
  }
  m.unknown_city_lookups_ = unknown_city.load();
  return m;
}

}  // namespace peermatch
