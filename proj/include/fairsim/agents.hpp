#pragma once

#include "fairsim/ballots.hpp"
#include "fairsim/types.hpp"

namespace fairsim {

/// Windowed proportional fairness: the protected share of all slots in the
/// window, scaled by the target proportion and truncated at 1. An empty
/// window reads as maximally unfair (0).
double agent_fairness(const HistoryWindow& window, const AgentSpec& spec,
                      const FeatureFlags& flags);

/// Synthetic-data compatibility is the user's propensity for the agent's
/// sensitive feature, clamped to [0, 1].
double agent_compatibility_synthetic(double user_propensity);

/// Binary entropy of the protected share of a user's rating profile.
/// H(0) = H(1) = 0; an empty profile reads as 0.
double agent_compatibility_entropy(std::size_t profile_protected_count, std::size_t profile_total);

/// Two-tier ballot over the candidates: all protected items preferred over
/// all unprotected ones. Empty tiers are dropped. Weight is filled in later
/// from the allocation result.
Ballot agent_ballot(const AgentSpec& spec, const ScoredList& candidates,
                    const FeatureFlags& flags);

}  // namespace fairsim
