#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/ingest.hpp"
#include "fairsim/rng.hpp"
#include "fairsim/types.hpp"

namespace fairsim {

enum class AllocationMechanism { LeastFair, Lottery, Weighted };
enum class ChoiceMechanism { Rescoring, Borda, Copeland, RankedPairs };

/// Accepts "least_fair", "lottery", "weighted".
AllocationMechanism parse_allocation(const std::string& name);
/// Accepts "rescoring", "borda", "copeland", "ranked_pairs".
ChoiceMechanism parse_choice(const std::string& name);

std::string to_string(AllocationMechanism mechanism);
std::string to_string(ChoiceMechanism mechanism);

struct ExperimentConfig {
  std::vector<AgentSpec> agents;
  AllocationMechanism allocation = AllocationMechanism::LeastFair;
  ChoiceMechanism choice = ChoiceMechanism::Rescoring;
  double recommender_weight = 1.0;
  double compatibility_exponent = 2.0;
  std::size_t window = 100;
  std::size_t list_length = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Everything recorded about one recommendation opportunity, measured at
/// decision time (fairness reflects the window BEFORE this delivery).
struct StepRecord {
  std::size_t arrival_index = 0;
  std::string user;
  std::string regime;
  std::vector<double> fairness;
  std::vector<double> compatibility;
  std::vector<double> weights;
  std::vector<ItemId> delivered;
  std::vector<double> scores;
};

struct ExperimentLog {
  ExperimentConfig config;
  std::vector<StepRecord> steps;
  std::size_t skipped_users = 0;
};

/// The immutable inputs of a simulation run.
struct Dataset {
  RecommendationSet recommendations;
  FeatureFlags flags;
  CompatibilityProvider compatibilities;
};

/// The dynamic loop: holds the history window and the run's single rng
/// stream. One instance per run; step once per arrival, in order.
class Simulation {
public:
  Simulation(ExperimentConfig config, const Dataset& data);

  /// Warm-starts the window as if `delivered` had already gone out. No
  /// record is emitted; intended for controlled starting conditions.
  void push_history(std::vector<ItemId> delivered);

  /// Measures fairness and compatibility, allocates, aggregates ballots,
  /// truncates to k, and commits the delivery to the window. Empty
  /// candidate lists skip the user and bump the skip counter.
  std::optional<StepRecord> step(const Arrival& arrival, const ScoredList& candidates);

  const HistoryWindow& window() const { return window_; }
  std::size_t skipped_users() const { return skipped_; }

private:
  ExperimentConfig config_;
  const Dataset* data_;
  HistoryWindow window_;
  Rng rng_;
  std::size_t arrival_counter_ = 0;
  std::size_t skipped_ = 0;
};

/// Folds step over the arrivals in order and returns the full record
/// sequence with a config echo. Errors gain `arrival <i> (user <id>)`
/// context. Every arrival must have a candidate list in the dataset.
ExperimentLog run(const ExperimentConfig& config, const std::vector<Arrival>& arrivals,
                  const Dataset& data);

/// run() after warm-starting the window with `history` (oldest first).
ExperimentLog run_with_history(const ExperimentConfig& config,
                               const std::vector<Arrival>& arrivals, const Dataset& data,
                               const std::vector<std::vector<ItemId>>& history);

}  // namespace fairsim
