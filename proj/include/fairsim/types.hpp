#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fairsim {

using ItemId = std::string;

/// Bad configuration (unknown mechanism, empty agent set, key errors).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries the offending line number.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScoredEntry {
  ItemId item;
  double score = 0.0;
};

/// Ordered (item, score) list with non-increasing scores and distinct ids.
/// Used both for recommender output and for delivered lists.
class ScoredList {
public:
  ScoredList() = default;

  /// Sorts entries by score descending, ties by ascending item id.
  static ScoredList ranked(std::vector<ScoredEntry> entries);

  /// Accepts an already-ordered list; rejects increasing scores or duplicates.
  static ScoredList from_ordered(std::vector<ScoredEntry> entries);

  const std::vector<ScoredEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<ItemId> ids() const;
  std::vector<ItemId> top_ids(std::size_t k) const;
  ScoredList truncated(std::size_t k) const;
  std::unordered_map<ItemId, double> score_map() const;

private:
  std::vector<ScoredEntry> entries_;
};

/// One fairness concern: which items it protects, the proportion it wants,
/// and the score increment it contributes under rescoring.
struct AgentSpec {
  std::string name;
  double target_proportion = 0.25;  // pi, in (0, 1]
  double delta = 0.1;               // rescoring increment, >= 0
  std::string protected_feature;    // key into the item feature table

  void validate() const;
};

struct AgentState {
  AgentSpec spec;
  double fairness = 0.0;  // in [0, 1]; 1 = target met
};

/// Per-feature protected-item membership. Items absent from the table are
/// unprotected for every feature.
class FeatureFlags {
public:
  void add_feature(const std::string& feature);
  void set_protected(const std::string& feature, const ItemId& item);
  void add_item(const ItemId& item) { known_items_.insert(item); }

  bool has_feature(const std::string& feature) const;
  bool is_protected(const std::string& feature, const ItemId& item) const;
  bool has_item(const ItemId& item) const { return known_items_.count(item) > 0; }

  std::vector<std::string> features() const;

  /// Rejects agent specs keyed to features the table does not define.
  void require_features(const std::vector<AgentSpec>& agents) const;

private:
  std::unordered_map<std::string, std::unordered_set<ItemId>> protected_;
  std::unordered_set<ItemId> known_items_;
};

struct WindowCounts {
  std::unordered_map<ItemId, std::size_t> counts;
  std::size_t total = 0;
};

/// Bounded FIFO of the last W delivered item-id lists. The substrate of
/// every windowed fairness measurement.
class HistoryWindow {
public:
  explicit HistoryWindow(std::size_t capacity);

  /// Appends a delivered list, evicting exactly the oldest when full.
  void push(std::vector<ItemId> delivered);

  /// Multiset of all item ids currently stored, with repetition across lists.
  WindowCounts counts() const;

  std::size_t size() const { return lists_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::deque<std::vector<ItemId>>& lists() const { return lists_; }

private:
  std::size_t capacity_;
  std::deque<std::vector<ItemId>> lists_;
};

/// One recommendation opportunity: the arriving user plus the regime label
/// it was generated under (empty for ingested data).
struct Arrival {
  std::string user;
  std::string regime;
};

/// Phase-one output: one weight per agent, in agent declaration order.
/// Zero weight means not allocated.
struct AllocationResult {
  std::vector<std::string> agents;
  Eigen::ArrayXd weights;

  double weight_of(const std::string& agent) const;
  bool any_allocated() const { return weights.size() > 0 && (weights > 0.0).any(); }
};

}  // namespace fairsim
