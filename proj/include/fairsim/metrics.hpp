#pragma once

#include <vector>

#include "fairsim/simulator.hpp"
#include "fairsim/types.hpp"

namespace fairsim {

/// nDCG with binary relevance: an item is relevant iff it appears in the
/// top k of `original`. Discount 1/log2(rank+1); ideal is the original
/// top-k itself, so an unchanged list scores exactly 1.
double ndcg_at_k(const ScoredList& delivered, const ScoredList& original, std::size_t k);

double ndcg_at_k(const std::vector<ItemId>& delivered_ids, const ScoredList& original,
                 std::size_t k);

struct FairnessReport {
  std::vector<double> per_agent;
  double average = 0.0;
};

/// Whole-experiment fairness: protected share of every delivered slot,
/// scaled by each agent's target and truncated at 1, then averaged across
/// agents. Deliberately not window-limited.
FairnessReport experiment_fairness(const ExperimentLog& log, const std::vector<AgentSpec>& agents,
                                   const FeatureFlags& flags);

/// The same metric over the original top-k lists, i.e. what a run without
/// re-ranking would have delivered.
FairnessReport baseline_fairness(const std::vector<Arrival>& arrivals,
                                 const RecommendationSet& recommendations, std::size_t k,
                                 const std::vector<AgentSpec>& agents, const FeatureFlags& flags);

/// Per-agent decision-time fairness, one series entry per arrival.
std::vector<std::vector<double>> windowed_fairness_series(const ExperimentLog& log);

/// Per-agent cumulative allocation weight, one series entry per arrival.
std::vector<std::vector<double>> allocation_counts(const ExperimentLog& log);

/// Mean nDCG over all steps of a run, against each user's original list.
double mean_ndcg(const ExperimentLog& log, const RecommendationSet& recommendations,
                 std::size_t k);

}  // namespace fairsim
