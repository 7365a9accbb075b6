#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairsim/types.hpp"

namespace fairsim {

/// Per-user recommender output plus the order users first appear in the
/// file, which doubles as the default arrival order.
struct RecommendationSet {
  std::vector<std::string> user_order;
  std::unordered_map<std::string, ScoredList> lists;
};

/// `user_id,item_id,score` with a header row. Lists come back sorted by
/// score descending; duplicate (user, item) rows are rejected.
RecommendationSet load_recommendations(const std::string& path);

void write_recommendations(const std::string& path, const RecommendationSet& recs);

/// `item_id,<feature>,...` with 0/1 cells. Every feature key an agent
/// references must name a column.
FeatureFlags load_item_features(const std::string& path,
                                const std::vector<std::string>& required_features);

void write_item_features(const std::string& path, const std::vector<std::string>& features,
                         const std::vector<ItemId>& items, const FeatureFlags& flags);

/// `user_id,item_id,rating`; ratings are validated numeric but only the
/// item sets are kept (compatibility entropy needs exposure, not values).
struct RatingProfiles {
  std::unordered_map<std::string, std::vector<ItemId>> items_by_user;
};

RatingProfiles load_rating_profiles(const std::string& path);

enum class CompatSource { File, ProfileEntropy, NeutralDefault };

struct CompatLookup {
  double value = 0.5;
  CompatSource source = CompatSource::NeutralDefault;
};

/// `user_id,agent_name,score` plus fallbacks for missing entries: the
/// entropy of the user's rating profile when profiles are loaded, else a
/// neutral 0.5. File rows may name either the agent or its feature key.
class CompatibilityProvider {
public:
  static CompatibilityProvider from_file(const std::string& path);
  static CompatibilityProvider empty() { return CompatibilityProvider(); }

  void attach_profiles(RatingProfiles profiles) { profiles_ = std::move(profiles); }
  void set_entry(const std::string& user, const std::string& key, double value);

  CompatLookup get(const std::string& user, const AgentSpec& agent,
                   const FeatureFlags& flags) const;

  std::size_t entry_count() const;

private:
  std::unordered_map<std::string, std::unordered_map<std::string, double>> by_user_;
  std::optional<RatingProfiles> profiles_;
};

struct CompatibilityRow {
  std::string user;
  std::string agent;
  double score = 0.0;
};

void write_compatibilities(const std::string& path, const std::vector<CompatibilityRow>& rows);

}  // namespace fairsim
