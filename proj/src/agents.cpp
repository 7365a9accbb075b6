#include "fairsim/agents.hpp"

#include <algorithm>
#include <cmath>

namespace fairsim {

double agent_fairness(const HistoryWindow& window, const AgentSpec& spec,
                      const FeatureFlags& flags) {
  const WindowCounts wc = window.counts();
  if (wc.total == 0) return 0.0;
  std::size_t protected_slots = 0;
  for (const auto& [item, count] : wc.counts) {
    if (flags.is_protected(spec.protected_feature, item)) protected_slots += count;
  }
  const double proportion =
      static_cast<double>(protected_slots) / static_cast<double>(wc.total);
  return std::min(1.0, proportion / spec.target_proportion);
}

double agent_compatibility_synthetic(double user_propensity) {
  return std::clamp(user_propensity, 0.0, 1.0);
}

double agent_compatibility_entropy(std::size_t profile_protected_count,
                                   std::size_t profile_total) {
  if (profile_protected_count > profile_total) {
    throw std::invalid_argument("protected count exceeds profile total");
  }
  if (profile_total == 0) return 0.0;
  const double p =
      static_cast<double>(profile_protected_count) / static_cast<double>(profile_total);
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

Ballot agent_ballot(const AgentSpec& spec, const ScoredList& candidates,
                    const FeatureFlags& flags) {
  std::vector<ItemId> protected_tier;
  std::vector<ItemId> unprotected_tier;
  for (const auto& e : candidates.entries()) {
    if (flags.is_protected(spec.protected_feature, e.item)) {
      protected_tier.push_back(e.item);
    } else {
      unprotected_tier.push_back(e.item);
    }
  }
  std::vector<std::vector<ItemId>> tiers;
  if (!protected_tier.empty()) tiers.push_back(std::move(protected_tier));
  if (!unprotected_tier.empty()) tiers.push_back(std::move(unprotected_tier));
  return Ballot::tiered(std::move(tiers), 0.0);
}

}  // namespace fairsim
