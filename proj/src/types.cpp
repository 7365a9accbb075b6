#include "fairsim/types.hpp"

#include <algorithm>

namespace fairsim {

namespace {

void check_distinct(const std::vector<ScoredEntry>& entries) {
  std::unordered_set<ItemId> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.item).second) {
      throw std::invalid_argument("duplicate item id in scored list: " + e.item);
    }
  }
}

}  // namespace

ScoredList ScoredList::ranked(std::vector<ScoredEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const ScoredEntry& a, const ScoredEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item < b.item;
  });
  check_distinct(entries);
  ScoredList out;
  out.entries_ = std::move(entries);
  return out;
}

ScoredList ScoredList::from_ordered(std::vector<ScoredEntry> entries) {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].score > entries[i - 1].score) {
      throw std::invalid_argument("scored list out of order at position " + std::to_string(i));
    }
  }
  check_distinct(entries);
  ScoredList out;
  out.entries_ = std::move(entries);
  return out;
}

std::vector<ItemId> ScoredList::ids() const {
  std::vector<ItemId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.item);
  return out;
}

std::vector<ItemId> ScoredList::top_ids(std::size_t k) const {
  std::vector<ItemId> out;
  out.reserve(std::min(k, entries_.size()));
  for (std::size_t i = 0; i < entries_.size() && i < k; ++i) out.push_back(entries_[i].item);
  return out;
}

ScoredList ScoredList::truncated(std::size_t k) const {
  ScoredList out;
  out.entries_.assign(entries_.begin(), entries_.begin() + std::min(k, entries_.size()));
  return out;
}

std::unordered_map<ItemId, double> ScoredList::score_map() const {
  std::unordered_map<ItemId, double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.emplace(e.item, e.score);
  return out;
}

void AgentSpec::validate() const {
  if (name.empty()) throw ConfigError("agent name must be non-empty");
  if (!(target_proportion > 0.0) || target_proportion > 1.0) {
    throw ConfigError("agent '" + name + "': target_proportion must be in (0, 1], got " +
                      std::to_string(target_proportion));
  }
  if (delta < 0.0) {
    throw ConfigError("agent '" + name + "': delta must be >= 0, got " + std::to_string(delta));
  }
  if (protected_feature.empty()) {
    throw ConfigError("agent '" + name + "': protected_feature must be non-empty");
  }
}

void FeatureFlags::add_feature(const std::string& feature) {
  protected_.try_emplace(feature);
}

void FeatureFlags::set_protected(const std::string& feature, const ItemId& item) {
  protected_[feature].insert(item);
  known_items_.insert(item);
}

bool FeatureFlags::has_feature(const std::string& feature) const {
  return protected_.count(feature) > 0;
}

bool FeatureFlags::is_protected(const std::string& feature, const ItemId& item) const {
  auto it = protected_.find(feature);
  return it != protected_.end() && it->second.count(item) > 0;
}

std::vector<std::string> FeatureFlags::features() const {
  std::vector<std::string> out;
  out.reserve(protected_.size());
  for (const auto& [name, _] : protected_) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

void FeatureFlags::require_features(const std::vector<AgentSpec>& agents) const {
  for (const auto& a : agents) {
    if (!has_feature(a.protected_feature)) {
      throw ConfigError("agent '" + a.name + "' references unknown feature '" +
                        a.protected_feature + "'");
    }
  }
}

HistoryWindow::HistoryWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("history window capacity must be >= 1");
}

void HistoryWindow::push(std::vector<ItemId> delivered) {
  if (delivered.empty()) {
    throw std::invalid_argument("cannot push an empty delivered list into the history window");
  }
  lists_.push_back(std::move(delivered));
  if (lists_.size() > capacity_) lists_.pop_front();
}

WindowCounts HistoryWindow::counts() const {
  WindowCounts out;
  for (const auto& list : lists_) {
    for (const auto& id : list) {
      ++out.counts[id];
      ++out.total;
    }
  }
  return out;
}

double AllocationResult::weight_of(const std::string& agent) const {
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (agents[i] == agent) return weights[static_cast<Eigen::Index>(i)];
  }
  return 0.0;
}

}  // namespace fairsim
