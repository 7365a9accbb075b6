#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairsim/config.hpp"
#include "fairsim/datagen.hpp"
#include "fairsim/metrics.hpp"
#include "fairsim/simulator.hpp"

namespace fairsim {

inline constexpr const char* kVersion = "0.1.0";

struct RunnerOptions {
  std::optional<std::uint64_t> seed_override;
  bool quiet = false;
};

/// Writes recommendations.csv, item_features.csv, compatibilities.csv and
/// a manifest.json (genspec echo + arrival order) into `outdir`.
void generate_to_dir(const GenSpec& spec, const std::string& outdir, bool quiet);

/// A plan's inputs, either generated in memory or loaded from files. Items
/// that appear in recommendations but not in the feature file are added as
/// unprotected and counted.
struct LoadedData {
  Dataset dataset;
  std::vector<Arrival> arrivals;
  std::size_t unknown_items = 0;
};

LoadedData load_plan_data(const ExperimentPlan& plan, bool quiet);

/// Runs every cell of the plan's mechanism/seed grid. A single cell writes
/// into `outdir` directly; a grid writes one subdirectory per cell. Each
/// cell emits steps.csv, summary.csv, allocation.csv, fairness_series.csv
/// and manifest.json. Returns the number of cells run.
std::size_t run_to_dir(const ExperimentPlan& plan, const std::string& outdir,
                       const RunnerOptions& options);

/// Name of the subdirectory one grid cell writes into.
std::string cell_dir_name(const ExperimentPlan& plan, AllocationMechanism allocation,
                          ChoiceMechanism choice, std::uint64_t seed);

/// Collects every summary.csv under `outdir` (root or one level deep) into
/// an aligned text table.
std::string summarize_dir(const std::string& outdir);

}  // namespace fairsim
