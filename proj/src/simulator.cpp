#include "fairsim/simulator.hpp"

#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "fairsim/agents.hpp"
#include "fairsim/allocation.hpp"
#include "fairsim/ballots.hpp"
#include "fairsim/choice.hpp"

namespace fairsim {

AllocationMechanism parse_allocation(const std::string& name) {
  if (name == "least_fair") return AllocationMechanism::LeastFair;
  if (name == "lottery") return AllocationMechanism::Lottery;
  if (name == "weighted") return AllocationMechanism::Weighted;
  throw ConfigError("unknown allocation mechanism: " + name);
}

ChoiceMechanism parse_choice(const std::string& name) {
  if (name == "rescoring") return ChoiceMechanism::Rescoring;
  if (name == "borda") return ChoiceMechanism::Borda;
  if (name == "copeland") return ChoiceMechanism::Copeland;
  if (name == "ranked_pairs") return ChoiceMechanism::RankedPairs;
  throw ConfigError("unknown choice mechanism: " + name);
}

std::string to_string(AllocationMechanism mechanism) {
  switch (mechanism) {
    case AllocationMechanism::LeastFair: return "least_fair";
    case AllocationMechanism::Lottery: return "lottery";
    case AllocationMechanism::Weighted: return "weighted";
  }
  throw std::logic_error("unreachable");
}

std::string to_string(ChoiceMechanism mechanism) {
  switch (mechanism) {
    case ChoiceMechanism::Rescoring: return "rescoring";
    case ChoiceMechanism::Borda: return "borda";
    case ChoiceMechanism::Copeland: return "copeland";
    case ChoiceMechanism::RankedPairs: return "ranked_pairs";
  }
  throw std::logic_error("unreachable");
}

void ExperimentConfig::validate() const {
  if (agents.empty()) throw ConfigError("at least one agent is required");
  std::unordered_set<std::string> names;
  for (const auto& agent : agents) {
    agent.validate();
    if (!names.insert(agent.name).second) {
      throw ConfigError("duplicate agent name: " + agent.name);
    }
  }
  if (recommender_weight < 0.0) throw ConfigError("recommender_weight must be non-negative");
  if (compatibility_exponent < 0.0) {
    throw ConfigError("compatibility_exponent must be non-negative");
  }
  if (window == 0) throw ConfigError("window must be at least 1");
  if (list_length == 0) throw ConfigError("list_length must be at least 1");
}

Simulation::Simulation(ExperimentConfig config, const Dataset& data)
    : config_(std::move(config)), data_(&data), window_(config_.window), rng_(config_.seed) {
  config_.validate();
  data_->flags.require_features(config_.agents);
}

void Simulation::push_history(std::vector<ItemId> delivered) {
  window_.push(std::move(delivered));
}

std::optional<StepRecord> Simulation::step(const Arrival& arrival, const ScoredList& candidates) {
  const std::size_t index = arrival_counter_++;
  if (candidates.empty()) {
    ++skipped_;
    return std::nullopt;
  }

  const std::size_t n_agents = config_.agents.size();
  StepRecord record;
  record.arrival_index = index;
  record.user = arrival.user;
  record.regime = arrival.regime;
  record.fairness.reserve(n_agents);
  record.compatibility.reserve(n_agents);

  OpportunityContext ctx;
  ctx.fairness.resize(static_cast<Eigen::Index>(n_agents));
  ctx.compatibility.resize(static_cast<Eigen::Index>(n_agents));
  for (std::size_t a = 0; a < n_agents; ++a) {
    const auto& agent = config_.agents[a];
    ctx.agents.push_back(agent.name);
    const double fairness = agent_fairness(window_, agent, data_->flags);
    const double compatibility =
        data_->compatibilities.get(arrival.user, agent, data_->flags).value;
    ctx.fairness[static_cast<Eigen::Index>(a)] = fairness;
    ctx.compatibility[static_cast<Eigen::Index>(a)] = compatibility;
    record.fairness.push_back(fairness);
    record.compatibility.push_back(compatibility);
  }

  AllocationResult allocation;
  switch (config_.allocation) {
    case AllocationMechanism::LeastFair:
      allocation = allocate_least_fair(ctx);
      break;
    case AllocationMechanism::Lottery:
      allocation = allocate_lottery(ctx, rng_, config_.compatibility_exponent);
      break;
    case AllocationMechanism::Weighted:
      allocation = allocate_weighted(ctx, config_.compatibility_exponent);
      break;
  }
  record.weights.assign(allocation.weights.data(),
                        allocation.weights.data() + allocation.weights.size());

  ScoredList aggregated = [&] {
    if (config_.choice == ChoiceMechanism::Rescoring) {
      return aggregate_rescoring(candidates, allocation, config_.agents, data_->flags);
    }
    Profile profile = Profile::build(candidates, config_.recommender_weight);
    for (std::size_t a = 0; a < n_agents; ++a) {
      const double weight = allocation.weights[static_cast<Eigen::Index>(a)];
      if (weight == 0.0) continue;
      Ballot ballot = agent_ballot(config_.agents[a], candidates, data_->flags);
      ballot.weight = weight;
      profile.agent_ballots.emplace_back(config_.agents[a], std::move(ballot));
    }
    switch (config_.choice) {
      case ChoiceMechanism::Borda: return aggregate_borda(profile);
      case ChoiceMechanism::Copeland: return aggregate_copeland(profile);
      default: return aggregate_ranked_pairs(profile, rng_);
    }
  }();

  const ScoredList delivered = aggregated.truncated(config_.list_length);
  record.delivered = delivered.ids();
  record.scores.reserve(delivered.size());
  for (const auto& entry : delivered.entries()) record.scores.push_back(entry.score);
  window_.push(delivered.ids());
  return record;
}

ExperimentLog run(const ExperimentConfig& config, const std::vector<Arrival>& arrivals,
                  const Dataset& data) {
  return run_with_history(config, arrivals, data, {});
}

ExperimentLog run_with_history(const ExperimentConfig& config,
                               const std::vector<Arrival>& arrivals, const Dataset& data,
                               const std::vector<std::vector<ItemId>>& history) {
  config.validate();
  Simulation sim(config, data);
  for (const auto& delivered : history) sim.push_history(delivered);

  ExperimentLog log;
  log.config = config;
  log.steps.reserve(arrivals.size());
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    const auto& arrival = arrivals[i];
    auto list_it = data.recommendations.lists.find(arrival.user);
    if (list_it == data.recommendations.lists.end()) {
      throw ConfigError("arrival " + std::to_string(i) + " (user " + arrival.user +
                        "): no recommendation list");
    }
    try {
      if (auto record = sim.step(arrival, list_it->second)) {
        log.steps.push_back(std::move(*record));
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("arrival " + std::to_string(i) + " (user " + arrival.user +
                               "): " + e.what());
    }
  }
  log.skipped_users = sim.skipped_users();
  return log;
}

}  // namespace fairsim
