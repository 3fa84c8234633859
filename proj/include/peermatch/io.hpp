#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "peermatch/detail/csv.hpp"
#include "peermatch/eval.hpp"

namespace peermatch {

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  return out;
}

}  // namespace detail

/// Square layout: `user_id` corner, ids across and down, 6-decimal cells,
/// `x` on the diagonal.
inline void write_matrix_csv(std::ostream& out, const SimilarityMatrix& m) {
  out << "user_id";
  for (LearnerId id : m.ids()) out << ',' << id;
  out << '\n';
  for (LearnerId x : m.ids()) {
    out << x;
    for (LearnerId y : m.ids()) {
      if (x == y)
        out << ",x";
      else
        out << ',' << detail::format_fixed(m.at(x, y), 6);
    }
    out << '\n';
  }
}

inline void write_matrix_csv_file(const std::string& path, const SimilarityMatrix& m) {
  auto out = detail::open_output(path);
  write_matrix_csv(out, m);
}

/// Flat list form: one row per (owner, rank).
inline void write_recommendations_csv(std::ostream& out, const RecommendationSet& recs) {
  out << "owner_id,rank,candidate_id,score\n";
  for (const auto& [owner, list] : recs.lists) {
    for (const auto& e : list.entries)
      out << owner << ',' << e.rank << ',' << e.id << ',' << detail::format_full(e.score)
          << '\n';
  }
}

inline void write_recommendations_csv_file(const std::string& path,
                                           const RecommendationSet& recs) {
  auto out = detail::open_output(path);
  write_recommendations_csv(out, recs);
}

/// Map form: owner id -> ordered candidate array.
inline void write_recommendations_json(std::ostream& out, const RecommendationSet& recs) {
  nlohmann::ordered_json doc;
  doc["k"] = recs.k;
  nlohmann::ordered_json lists = nlohmann::ordered_json::object();
  for (const auto& [owner, list] : recs.lists) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : list.entries)
      entries.push_back({{"rank", e.rank}, {"candidate", e.id}, {"score", e.score}});
    lists[std::to_string(owner)] = std::move(entries);
  }
  doc["lists"] = std::move(lists);
  out << doc.dump(2) << '\n';
}

inline void write_recommendations_json_file(const std::string& path,
                                            const RecommendationSet& recs) {
  auto out = detail::open_output(path);
  write_recommendations_json(out, recs);
}

/// Reads lists back from the flat CSV form. The score column is optional so
/// hand-written fixtures can carry ranks only. K defaults to the longest
/// list when not given.
inline RecommendationSet read_recommendations_csv(std::istream& in,
                                                  std::optional<int> k = std::nullopt) {
  auto rows = detail::read_csv(in, /*allow_comments=*/true);
  if (rows.empty()) throw ParseError("recommendations file is empty");
  detail::Header header(rows.front(), "recommendations header");
  std::size_t c_owner = header.require("owner_id");
  std::size_t c_rank = header.require("rank");
  std::size_t c_cand = header.require("candidate_id");
  bool has_score = header.has("score");
  std::size_t c_score = has_score ? header.require("score") : 0;

  std::map<LearnerId, std::vector<RankedCandidate>> collected;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto line = [&] { return "recommendations line " + std::to_string(row.line_no); };
    unsigned long long owner = 0, cand = 0;
    if (!detail::parse_u64(detail::cell_at(row, c_owner, "recommendations"), owner))
      throw ParseError(line() + ": bad owner_id");
    int rank = 0;
    if (!detail::parse_int(detail::cell_at(row, c_rank, "recommendations"), rank) || rank < 1)
      throw ParseError(line() + ": bad rank");
    if (!detail::parse_u64(detail::cell_at(row, c_cand, "recommendations"), cand))
      throw ParseError(line() + ": bad candidate_id");
    if (owner == cand) throw ParseError(line() + ": learner recommended to themselves");
    double score = 0.0;
    if (has_score) {
      std::string cell = detail::trim(detail::cell_at(row, c_score, "recommendations"));
      if (!cell.empty() && !detail::parse_double(cell, score))
        throw ParseError(line() + ": bad score '" + cell + "'");
    }
    collected[owner].push_back(RankedCandidate{cand, score, rank});
  }
  if (collected.empty()) throw ParseError("recommendations file has no data rows");

  RecommendationSet set;
  std::size_t longest = 0;
  for (auto& [owner, entries] : collected) {
    std::sort(entries.begin(), entries.end(),
              [](const RankedCandidate& a, const RankedCandidate& b) { return a.rank < b.rank; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].rank != static_cast<int>(i) + 1)
        throw ParseError("recommendations for learner " + std::to_string(owner) +
                         ": ranks are not contiguous from 1");
    }
    longest = std::max(longest, entries.size());
    RecommendationList list;
    list.owner = owner;
    list.entries = std::move(entries);
    set.lists.emplace(owner, std::move(list));
  }
  set.k = k.value_or(static_cast<int>(longest));
  if (set.k < 1) throw ParseError("recommendations K must be >= 1");
  for (auto& [owner, list] : set.lists) {
    list.k = set.k;
    if (list.entries.size() > static_cast<std::size_t>(set.k))
      throw ParseError("recommendations for learner " + std::to_string(owner) +
                       " exceed K=" + std::to_string(set.k));
    for (const auto& e : list.entries) {
      if (!set.lists.count(e.id))
        throw ParseError("candidate " + std::to_string(e.id) +
                         " has no recommendation list of their own");
    }
  }
  return set;
}

inline RecommendationSet read_recommendations_csv_file(const std::string& path,
                                                       std::optional<int> k = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open recommendations file: " + path);
  return read_recommendations_csv(in, k);
}

/// One summary row per report; the shape consumed by external plotting.
inline void write_report_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "model,K,precision,recall,dcg,dcg_star,ndcg\n";
  for (const auto& r : reports) {
    out << r.model << ',' << r.k << ',' << detail::format_full(r.precision) << ','
        << detail::format_full(r.recall) << ',' << detail::format_full(r.dcg) << ','
        << detail::format_full(r.dcg_star) << ',' << detail::format_full(r.ndcg) << '\n';
  }
}

inline void write_report_csv_file(const std::string& path, std::span<const EvalReport> reports) {
  auto out = detail::open_output(path);
  write_report_csv(out, reports);
}

/// Full-precision report dump, per-learner rows included.
inline void write_report_json(std::ostream& out, std::span<const EvalReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json entry;
    entry["model"] = r.model;
    entry["k"] = r.k;
    entry["learners"] = r.m;
    entry["precision"] = r.precision;
    entry["recall"] = r.recall;
    entry["dcg"] = r.dcg;
    entry["dcg_star"] = r.dcg_star;
    entry["ndcg"] = r.ndcg;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.per_learner) {
      rows.push_back({{"id", row.id},
                      {"successes", row.successes},
                      {"recommended_by", row.recommended_by},
                      {"precision", row.precision},
                      {"recall", row.recall},
                      {"dcg", row.dcg}});
    }
    entry["per_learner"] = std::move(rows);
    doc.push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

inline void write_report_json_file(const std::string& path, std::span<const EvalReport> reports) {
  auto out = detail::open_output(path);
  write_report_json(out, reports);
}

}  // namespace peermatch
