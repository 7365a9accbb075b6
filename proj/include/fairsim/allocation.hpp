#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "fairsim/rng.hpp"
#include "fairsim/types.hpp"

namespace fairsim {

/// The two signals the allocation phase sees for each agent: its windowed
/// fairness and the arriving user's compatibility, both in [0, 1] and
/// aligned with `agents` (declaration order).
struct OpportunityContext {
  std::vector<std::string> agents;
  Eigen::ArrayXd fairness;
  Eigen::ArrayXd compatibility;

  void validate() const;
};

/// Single winner: the agent with the lowest fairness, weight 1.0.
/// Compatibility is ignored; ties go to the earliest-declared agent.
AllocationResult allocate_least_fair(const OpportunityContext& ctx);

/// Lottery distribution: unfairness * compatibility^exponent, normalized to
/// sum 1. All-zero raw weights yield an empty distribution.
Eigen::ArrayXd lottery_weights(const OpportunityContext& ctx, double compatibility_exponent = 2.0);

/// Draws one agent from lottery_weights; an empty distribution allocates
/// nobody and the recommender list passes through unchanged.
AllocationResult allocate_lottery(const OpportunityContext& ctx, Rng& rng,
                                  double compatibility_exponent = 2.0);

/// Every agent allocated at its raw unfairness * compatibility^exponent
/// weight, un-normalized.
AllocationResult allocate_weighted(const OpportunityContext& ctx,
                                   double compatibility_exponent = 2.0);

}  // namespace fairsim
