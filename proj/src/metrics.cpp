#include "fairsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace fairsim {

namespace {

double dcg(const std::vector<ItemId>& ranked, const std::unordered_set<ItemId>& relevant,
           std::size_t k) {
  double sum = 0.0;
  const std::size_t depth = std::min(k, ranked.size());
  for (std::size_t r = 0; r < depth; ++r) {
    if (relevant.count(ranked[r])) sum += 1.0 / std::log2(static_cast<double>(r) + 2.0);
  }
  return sum;
}

}  // namespace

double ndcg_at_k(const std::vector<ItemId>& delivered_ids, const ScoredList& original,
                 std::size_t k) {
  if (k == 0) throw std::invalid_argument("ndcg_at_k: k must be at least 1");
  if (original.empty()) throw std::invalid_argument("ndcg_at_k: empty reference list");
  const auto top = original.top_ids(k);
  const std::unordered_set<ItemId> relevant(top.begin(), top.end());
  const double ideal = dcg(top, relevant, k);
  return dcg(delivered_ids, relevant, k) / ideal;
}

double ndcg_at_k(const ScoredList& delivered, const ScoredList& original, std::size_t k) {
  return ndcg_at_k(delivered.ids(), original, k);
}

FairnessReport experiment_fairness(const ExperimentLog& log, const std::vector<AgentSpec>& agents,
                                   const FeatureFlags& flags) {
  if (log.steps.empty()) throw std::invalid_argument("experiment_fairness: empty log");
  std::size_t total_slots = 0;
  for (const auto& step : log.steps) total_slots += step.delivered.size();

  FairnessReport report;
  report.per_agent.reserve(agents.size());
  for (const auto& agent : agents) {
    std::size_t protected_slots = 0;
    for (const auto& step : log.steps) {
      for (const auto& item : step.delivered) {
        if (flags.is_protected(agent.protected_feature, item)) ++protected_slots;
      }
    }
    const double share = static_cast<double>(protected_slots) / static_cast<double>(total_slots);
    report.per_agent.push_back(std::min(1.0, share / agent.target_proportion));
  }
  double sum = 0.0;
  for (double v : report.per_agent) sum += v;
  report.average = sum / static_cast<double>(agents.size());
  return report;
}

FairnessReport baseline_fairness(const std::vector<Arrival>& arrivals,
                                 const RecommendationSet& recommendations, std::size_t k,
                                 const std::vector<AgentSpec>& agents, const FeatureFlags& flags) {
  if (arrivals.empty()) throw std::invalid_argument("baseline_fairness: no arrivals");
  ExperimentLog pseudo;
  pseudo.steps.reserve(arrivals.size());
  for (const auto& arrival : arrivals) {
    auto it = recommendations.lists.find(arrival.user);
    if (it == recommendations.lists.end()) {
      throw ConfigError("baseline_fairness: no recommendation list for user " + arrival.user);
    }
    if (it->second.empty()) continue;
    StepRecord step;
    step.delivered = it->second.top_ids(k);
    pseudo.steps.push_back(std::move(step));
  }
  return experiment_fairness(pseudo, agents, flags);
}

std::vector<std::vector<double>> windowed_fairness_series(const ExperimentLog& log) {
  const std::size_t n_agents = log.config.agents.size();
  std::vector<std::vector<double>> series(n_agents);
  for (auto& s : series) s.reserve(log.steps.size());
  for (const auto& step : log.steps) {
    for (std::size_t a = 0; a < n_agents; ++a) series[a].push_back(step.fairness[a]);
  }
  return series;
}

std::vector<std::vector<double>> allocation_counts(const ExperimentLog& log) {
  const std::size_t n_agents = log.config.agents.size();
  std::vector<std::vector<double>> series(n_agents);
  std::vector<double> running(n_agents, 0.0);
  for (auto& s : series) s.reserve(log.steps.size());
  for (const auto& step : log.steps) {
    for (std::size_t a = 0; a < n_agents; ++a) {
      running[a] += step.weights[a];
      series[a].push_back(running[a]);
    }
  }
  return series;
}

double mean_ndcg(const ExperimentLog& log, const RecommendationSet& recommendations,
                 std::size_t k) {
  if (log.steps.empty()) throw std::invalid_argument("mean_ndcg: empty log");
  double sum = 0.0;
  for (const auto& step : log.steps) {
    const auto& original = recommendations.lists.at(step.user);
    sum += ndcg_at_k(step.delivered, original, k);
  }
  return sum / static_cast<double>(log.steps.size());
}

}  // namespace fairsim
