#include "fairsim/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "fairsim/agents.hpp"
#include "fairsim/csv.hpp"

namespace fairsim {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot open file for writing: " + path);
  return out;
}

}  // namespace

RecommendationSet load_recommendations(const std::string& path) {
  const auto table = csv::read_file(path);
  const std::size_t user_col = table.column("user_id", path);
  const std::size_t item_col = table.column("item_id", path);
  const std::size_t score_col = table.column("score", path);

  RecommendationSet out;
  std::unordered_map<std::string, std::unordered_set<ItemId>> seen;
  std::unordered_map<std::string, std::vector<ScoredEntry>> raw;
  for (const auto& row : table.rows) {
    const std::string& user = row.cells[user_col];
    const ItemId& item = row.cells[item_col];
    const double score = csv::parse_double(row.cells[score_col], path, row.line);
    if (!seen[user].insert(item).second) {
      throw LoadError(path + ":" + std::to_string(row.line) + ": duplicate recommendation (" +
                      user + ", " + item + ")");
    }
    if (raw.find(user) == raw.end()) out.user_order.push_back(user);
    raw[user].push_back({item, score});
  }
  for (auto& [user, entries] : raw) {
    out.lists.emplace(user, ScoredList::ranked(std::move(entries)));
  }
  return out;
}

void write_recommendations(const std::string& path, const RecommendationSet& recs) {
  auto out = open_output(path);
  csv::write_row(out, {"user_id", "item_id", "score"});
  for (const auto& user : recs.user_order) {
    for (const auto& e : recs.lists.at(user).entries()) {
      csv::write_row(out, {user, e.item, csv::format_double(e.score)});
    }
  }
}

FeatureFlags load_item_features(const std::string& path,
                                const std::vector<std::string>& required_features) {
  const auto table = csv::read_file(path);
  const std::size_t item_col = table.column("item_id", path);

  FeatureFlags flags;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != item_col) flags.add_feature(table.header[c]);
  }
  for (const auto& key : required_features) {
    if (!flags.has_feature(key)) {
      throw ConfigError(path + ": no feature column named '" + key + "'");
    }
  }
  for (const auto& row : table.rows) {
    const ItemId& item = row.cells[item_col];
    flags.add_item(item);
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == item_col) continue;
      const std::string& cell = row.cells[c];
      if (cell == "1") {
        flags.set_protected(table.header[c], item);
      } else if (cell != "0") {
        throw LoadError(path + ":" + std::to_string(row.line) + ": feature cells must be 0 or 1, got '" +
                        cell + "'");
      }
    }
  }
  return flags;
}

void write_item_features(const std::string& path, const std::vector<std::string>& features,
                         const std::vector<ItemId>& items, const FeatureFlags& flags) {
  auto out = open_output(path);
  std::vector<std::string> header = {"item_id"};
  header.insert(header.end(), features.begin(), features.end());
  csv::write_row(out, header);
  for (const auto& item : items) {
    std::vector<std::string> cells = {item};
    for (const auto& f : features) {
      cells.push_back(flags.is_protected(f, item) ? "1" : "0");
    }
    csv::write_row(out, cells);
  }
}

RatingProfiles load_rating_profiles(const std::string& path) {
  const auto table = csv::read_file(path);
  const std::size_t user_col = table.column("user_id", path);
  const std::size_t item_col = table.column("item_id", path);
  const std::size_t rating_col = table.column("rating", path);

  RatingProfiles out;
  for (const auto& row : table.rows) {
    csv::parse_double(row.cells[rating_col], path, row.line);
    out.items_by_user[row.cells[user_col]].push_back(row.cells[item_col]);
  }
  return out;
}

CompatibilityProvider CompatibilityProvider::from_file(const std::string& path) {
  const auto table = csv::read_file(path);
  const std::size_t user_col = table.column("user_id", path);
  const std::size_t agent_col = table.column("agent_name", path);
  const std::size_t score_col = table.column("score", path);

  CompatibilityProvider out;
  for (const auto& row : table.rows) {
    const double raw = csv::parse_double(row.cells[score_col], path, row.line);
    if (raw < -0.01 || raw > 1.01) {
      throw LoadError(path + ":" + std::to_string(row.line) +
                      ": compatibility out of range (likely wrong column): " +
                      row.cells[score_col]);
    }
    out.by_user_[row.cells[user_col]][row.cells[agent_col]] = std::clamp(raw, 0.0, 1.0);
  }
  return out;
}

void CompatibilityProvider::set_entry(const std::string& user, const std::string& key,
                                      double value) {
  by_user_[user][key] = std::clamp(value, 0.0, 1.0);
}

CompatLookup CompatibilityProvider::get(const std::string& user, const AgentSpec& agent,
                                        const FeatureFlags& flags) const {
  auto user_it = by_user_.find(user);
  if (user_it != by_user_.end()) {
    auto hit = user_it->second.find(agent.name);
    if (hit == user_it->second.end()) hit = user_it->second.find(agent.protected_feature);
    if (hit != user_it->second.end()) return {hit->second, CompatSource::File};
  }
  if (profiles_) {
    auto prof = profiles_->items_by_user.find(user);
    if (prof != profiles_->items_by_user.end()) {
      std::size_t protected_count = 0;
      for (const auto& item : prof->second) {
        if (flags.is_protected(agent.protected_feature, item)) ++protected_count;
      }
      return {agent_compatibility_entropy(protected_count, prof->second.size()),
              CompatSource::ProfileEntropy};
    }
  }
  return {0.5, CompatSource::NeutralDefault};
}

std::size_t CompatibilityProvider::entry_count() const {
  std::size_t n = 0;
  for (const auto& [user, entries] : by_user_) n += entries.size();
  return n;
}

void write_compatibilities(const std::string& path, const std::vector<CompatibilityRow>& rows) {
  auto out = open_output(path);
  csv::write_row(out, {"user_id", "agent_name", "score"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.user, r.agent, csv::format_double(r.score)});
  }
}

}  // namespace fairsim
