#pragma once

#include <utility>
#include <vector>

#include "fairsim/ballots.hpp"
#include "fairsim/rng.hpp"
#include "fairsim/types.hpp"

namespace fairsim {

/// Weighted pairwise tally over the whole profile. Validates the profile.
MarginMatrix pairwise_support(const Profile& profile);

/// Additive aggregation: each allocated agent adds weight * delta to the
/// recommender score of every item it protects. Ties broken canonically.
ScoredList aggregate_rescoring(const ScoredList& recommended, const AllocationResult& allocation,
                               const std::vector<AgentSpec>& agents, const FeatureFlags& flags);

/// Positional aggregation with tie-averaged scores: an item in a tier gets
/// the mean of the positional scores (n-1 ... 0) its tier spans.
ScoredList aggregate_borda(const Profile& profile);

/// Win-loss record over all candidate pairs; a tied pair scores 0.5 for
/// both sides. Output scores are the Copeland points.
ScoredList aggregate_copeland(const Profile& profile);

/// Ranked Pairs with the locked majority graph exposed for auditing.
struct RankedPairsOutcome {
  ScoredList list;
  std::vector<std::pair<ItemId, ItemId>> locked;  // winner precedes loser
};

/// Locks pairwise victories in descending margin order, skipping a pair
/// only when it would create a cycle; margin ties are permuted by rng.
/// A contested pair with equal support on both sides is locked in a
/// random direction; pairs nobody voted on are left to the canonical
/// tie-break. Output scores are synthetic (n - rank).
RankedPairsOutcome ranked_pairs_trace(const Profile& profile, Rng& rng);

ScoredList aggregate_ranked_pairs(const Profile& profile, Rng& rng);

}  // namespace fairsim
