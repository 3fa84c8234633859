#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "peermatch/detail/csv.hpp"
#include "peermatch/detail/strings.hpp"
#include "peermatch/errors.hpp"

namespace peermatch {

/// Rooted single-parent concept hierarchy. Node names are unique
/// case-insensitively; depth(root) = 1, depth(child) = depth(parent) + 1.
/// Immutable after construction, so queries are safe for concurrent readers.
class Taxonomy {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kNoNode = static_cast<NodeId>(-1);

  /// Builds from `parent,child` edges. Exactly one node must never appear
  /// as a child; that node becomes the root.
  static Taxonomy from_edges(std::span<const std::pair<std::string, std::string>> edges) {
    Taxonomy t;
    for (const auto& [parent_name, child_name] : edges) {
      NodeId parent = t.intern(parent_name);
      NodeId child = t.intern(child_name);
      if (parent == child)
        throw ParseError("taxonomy: self-edge on node '" + t.name(child) + "'");
      NodeId& slot = t.parent_[child];
      if (slot != kNoNode && slot != parent)
        throw ParseError("taxonomy: node '" + t.name(child) + "' has conflicting parents '" +
                         t.name(slot) + "' and '" + t.name(parent) + "'");
      slot = parent;
    }
    t.finalize();
    return t;
  }

  /// Parses an edge-list file: one `parent,child` per line, '#' comments.
  static Taxonomy load(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& row : detail::read_csv(in, /*allow_comments=*/true)) {
      if (row.cells.size() != 2 || row.cells[0].empty() || row.cells[1].empty())
        throw ParseError("taxonomy: line " + std::to_string(row.line_no) +
                         " must be 'parent,child'");
      edges.emplace_back(row.cells[0], row.cells[1]);
    }
    return from_edges(edges);
  }

  static Taxonomy load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open taxonomy file: " + path);
    return load(in);
  }

  std::size_t size() const { return names_.size(); }
  NodeId root() const { return root_; }
  const std::string& name(NodeId n) const { return names_[n]; }
  int depth(NodeId n) const { return depth_[n]; }
  NodeId parent(NodeId n) const { return parent_[n]; }

  /// Case-insensitive lookup; kNoNode when absent.
  NodeId find(std::string_view name) const {
    auto it = index_.find(detail::fold(name));
    return it == index_.end() ? kNoNode : it->second;
  }

  /// Lookup that fails loudly, naming the concept.
  NodeId require(std::string_view name) const {
    NodeId n = find(name);
    if (n == kNoNode)
      throw ScoringError("concept '" + std::string(name) + "' not found in taxonomy");
    return n;
  }

  /// Least common subsumer: deepest node that is an ancestor-or-self of both.
  NodeId lcs(NodeId a, NodeId b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    return a;
  }

  NodeId lcs(std::string_view a, std::string_view b) const { return lcs(require(a), require(b)); }

  /// Wu-Palmer similarity: 2*depth(lcs) / (depth(a) + depth(b)), in (0, 1].
  double wu_palmer(NodeId a, NodeId b) const {
    int lcs_depth = depth_[lcs(a, b)];
    return 2.0 * lcs_depth / (depth_[a] + depth_[b]);
  }

  double wu_palmer(std::string_view a, std::string_view b) const {
    return wu_palmer(require(a), require(b));
  }

  /// Distance between two interest sets: 1 minus the best Wu-Palmer
  /// similarity over all cross pairs, so any shared concept gives 0.
  double interest_distance(std::span<const std::string> pref_interests,
                           std::span<const std::string> profile_interests) const {
    if (pref_interests.empty() || profile_interests.empty())
      throw ScoringError("interest distance requires non-empty concept sets");
    double best = 0.0;
    for (const auto& p : pref_interests) {
      NodeId pn = require(p);
      for (const auto& q : profile_interests) {
        double sim = wu_palmer(pn, require(q));
        if (sim > best) best = sim;
      }
    }
    return 1.0 - best;
  }

  /// Nodes with no children, sorted by normalized name.
  std::vector<std::string> leaves() const {
    std::vector<bool> has_child(names_.size(), false);
    for (NodeId n = 0; n < names_.size(); ++n)
      if (n != root_) has_child[parent_[n]] = true;
    std::vector<std::string> out;
    for (const auto& [key, id] : index_)
      if (!has_child[id]) out.push_back(names_[id]);
    return out;
  }

 private:
  NodeId intern(const std::string& display_name) {
    std::string trimmed = detail::trim(display_name);
    if (trimmed.empty()) throw ParseError("taxonomy: empty node name");
    std::string key = detail::fold(trimmed);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    NodeId id = static_cast<NodeId>(names_.size());
    names_.push_back(trimmed);
    parent_.push_back(kNoNode);
    index_.emplace(std::move(key), id);
    return id;
  }

  void finalize() {
    if (names_.empty()) throw ParseError("taxonomy: no root found (empty input)");
    std::vector<NodeId> roots;
    for (NodeId n = 0; n < names_.size(); ++n)
      if (parent_[n] == kNoNode) roots.push_back(n);
    if (roots.empty())
      throw ParseError("taxonomy: cycle detected (every node has a parent)");
    if (roots.size() > 1) {
      std::string msg = "taxonomy: multiple roots:";
      for (NodeId r : roots) msg += " '" + names_[r] + "'";
      throw ParseError(msg);
    }
    root_ = roots.front();

    // Depths via iterative walk-up with memoization; a walk that revisits a
    // node or exceeds the node count is on a cycle.
    depth_.assign(names_.size(), 0);
    depth_[root_] = 1;
    for (NodeId n = 0; n < names_.size(); ++n) {
      if (depth_[n] != 0) continue;
      std::vector<NodeId> chain;
      NodeId cur = n;
      while (depth_[cur] == 0) {
        chain.push_back(cur);
        cur = parent_[cur];
        if (chain.size() > names_.size())
          throw ParseError("taxonomy: cycle detected involving node '" + names_[n] + "'");
      }
      int d = depth_[cur];
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth_[*it] = ++d;
    }
  }

  std::vector<std::string> names_;
  std::vector<NodeId> parent_;
  std::vector<int> depth_;
  std::map<std::string, NodeId> index_;
  NodeId root_ = kNoNode;
};

}  // namespace peermatch
