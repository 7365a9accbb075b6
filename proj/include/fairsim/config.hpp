#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/datagen.hpp"
#include "fairsim/simulator.hpp"

namespace fairsim {

/// Where a run's inputs come from: a generator spec (inline or referenced)
/// or pre-computed CSV files. Relative paths resolve against the config
/// file's directory.
struct DataConfig {
  enum class Source { Generated, Ingested };
  Source source = Source::Generated;
  std::optional<GenSpec> genspec;
  std::string genspec_path;
  std::string recommendations_path;
  std::string item_features_path;
  std::string compatibilities_path;
  std::string rating_profiles_path;
};

/// A parsed experiment file. Mechanisms and seeds may be lists; the runner
/// fans the cross product out into one run per cell.
struct ExperimentPlan {
  std::vector<AgentSpec> agents;
  std::vector<AllocationMechanism> allocations;
  std::vector<ChoiceMechanism> choices;
  std::vector<std::uint64_t> seeds;
  double recommender_weight = 1.0;
  double compatibility_exponent = 2.0;
  std::size_t window = 100;
  std::size_t list_length = 10;
  DataConfig data;

  std::size_t cell_count() const { return allocations.size() * choices.size() * seeds.size(); }

  ExperimentConfig cell(AllocationMechanism allocation, ChoiceMechanism choice,
                        std::uint64_t seed) const;
};

/// Parsers reject unknown keys and report every problem with the full key
/// path. `origin` names the source in error messages.
GenSpec parse_genspec_text(const std::string& text, const std::string& origin);
GenSpec load_genspec(const std::string& path);

ExperimentPlan parse_experiment_text(const std::string& text, const std::string& origin);
ExperimentPlan load_experiment(const std::string& path);

}  // namespace fairsim
