#include "fairsim/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fairsim/csv.hpp"

namespace fairsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot open file for writing: " + path.string());
  return out;
}

std::string join_ids(const std::vector<ItemId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ';';
    out += ids[i];
  }
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += csv::format_double(values[i]);
  }
  return out;
}

json genspec_to_json(const GenSpec& spec) {
  json j;
  j["n_items"] = spec.n_items;
  j["n_factors"] = spec.n_factors;
  j["n_sensitive"] = spec.n_sensitive;
  j["feature_names"] = spec.feature_names;
  j["item_propensities"] = spec.item_propensities;
  j["factor_stddev"] = spec.factor_stddev;
  j["exact_binary_items"] = spec.exact_binary_items;
  j["sample_size"] = spec.sample_size;
  j["list_size"] = spec.list_size;
  j["seed"] = spec.seed;
  json regimes = json::array();
  for (const auto& r : spec.regimes) {
    json regime;
    regime["name"] = r.name;
    regime["count"] = r.count;
    regime["propensity_means"] = r.propensity_means;
    regime["propensity_stddevs"] = r.propensity_stddevs;
    regimes.push_back(std::move(regime));
  }
  j["regimes"] = std::move(regimes);
  if (!spec.order.empty()) j["order"] = spec.order;
  return j;
}

json config_to_json(const ExperimentConfig& config) {
  json agents = json::array();
  for (const auto& agent : config.agents) {
    json a;
    a["name"] = agent.name;
    a["feature"] = agent.protected_feature;
    a["target_proportion"] = agent.target_proportion;
    a["delta"] = agent.delta;
    agents.push_back(std::move(a));
  }
  json j;
  j["agents"] = std::move(agents);
  j["allocation"] = to_string(config.allocation);
  j["choice"] = to_string(config.choice);
  j["recommender_weight"] = config.recommender_weight;
  j["compatibility_exponent"] = config.compatibility_exponent;
  j["window"] = config.window;
  j["list_length"] = config.list_length;
  j["seed"] = config.seed;
  return j;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

void write_steps_csv(const fs::path& path, const ExperimentLog& log) {
  auto out = open_output(path);
  std::vector<std::string> header = {"arrival_index", "user", "regime"};
  for (const auto& agent : log.config.agents) header.push_back("fairness_" + agent.name);
  for (const auto& agent : log.config.agents) header.push_back("compatibility_" + agent.name);
  for (const auto& agent : log.config.agents) header.push_back("weight_" + agent.name);
  header.push_back("delivered");
  header.push_back("scores");
  csv::write_row(out, header);
  for (const auto& step : log.steps) {
    std::vector<std::string> row = {std::to_string(step.arrival_index), step.user, step.regime};
    for (double v : step.fairness) row.push_back(csv::format_double(v));
    for (double v : step.compatibility) row.push_back(csv::format_double(v));
    for (double v : step.weights) row.push_back(csv::format_double(v));
    row.push_back(join_ids(step.delivered));
    row.push_back(join_doubles(step.scores));
    csv::write_row(out, row);
  }
}

void write_series_csv(const fs::path& path, const ExperimentLog& log,
                      const std::vector<std::vector<double>>& series) {
  auto out = open_output(path);
  std::vector<std::string> header = {"arrival_index"};
  for (const auto& agent : log.config.agents) header.push_back(agent.name);
  csv::write_row(out, header);
  for (std::size_t s = 0; s < log.steps.size(); ++s) {
    std::vector<std::string> row = {std::to_string(log.steps[s].arrival_index)};
    for (const auto& agent_series : series) row.push_back(csv::format_double(agent_series[s]));
    csv::write_row(out, row);
  }
}

void write_summary_csv(const fs::path& path, const ExperimentLog& log, const LoadedData& data) {
  auto out = open_output(path);
  csv::write_row(out, {"metric", "value"});
  csv::write_row(out, {"arrivals", std::to_string(log.steps.size())});
  csv::write_row(out, {"skipped_users", std::to_string(log.skipped_users)});
  if (log.steps.empty()) return;

  const std::size_t k = log.config.list_length;
  const std::string at_k = "@" + std::to_string(k);
  csv::write_row(out, {"ndcg" + at_k,
                       csv::format_double(mean_ndcg(log, data.dataset.recommendations, k))});
  const auto fairness = experiment_fairness(log, log.config.agents, data.dataset.flags);
  for (std::size_t a = 0; a < log.config.agents.size(); ++a) {
    csv::write_row(out, {"fairness_" + log.config.agents[a].name,
                         csv::format_double(fairness.per_agent[a])});
  }
  csv::write_row(out, {"fairness_average", csv::format_double(fairness.average)});
  const auto baseline = baseline_fairness(data.arrivals, data.dataset.recommendations, k,
                                          log.config.agents, data.dataset.flags);
  for (std::size_t a = 0; a < log.config.agents.size(); ++a) {
    csv::write_row(out, {"baseline_fairness_" + log.config.agents[a].name,
                         csv::format_double(baseline.per_agent[a])});
  }
  csv::write_row(out, {"baseline_fairness_average", csv::format_double(baseline.average)});
}

}  // namespace

void generate_to_dir(const GenSpec& spec, const std::string& outdir, bool quiet) {
  fs::create_directories(outdir);
  const auto dataset = generate(spec);
  const fs::path base(outdir);

  write_recommendations((base / "recommendations.csv").string(), dataset.recommendations);
  write_item_features((base / "item_features.csv").string(), dataset.feature_names,
                      dataset.item_ids, dataset.flags);
  write_compatibilities((base / "compatibilities.csv").string(), dataset.compatibility_rows);

  json manifest;
  manifest["kind"] = "dataset";
  manifest["version"] = kVersion;
  manifest["genspec"] = genspec_to_json(spec);
  json arrivals = json::array();
  for (const auto& arrival : dataset.arrivals) {
    json a;
    a["user"] = arrival.user;
    a["regime"] = arrival.regime;
    arrivals.push_back(std::move(a));
  }
  manifest["arrivals"] = std::move(arrivals);
  write_json(base / "manifest.json", manifest);

  if (!quiet) {
    std::cerr << "generated " << dataset.users.size() << " users, " << dataset.item_ids.size()
              << " items into " << outdir << "\n";
  }
}

LoadedData load_plan_data(const ExperimentPlan& plan, bool quiet) {
  LoadedData out;
  std::vector<std::string> agent_features;
  for (const auto& agent : plan.agents) agent_features.push_back(agent.protected_feature);

  if (plan.data.source == DataConfig::Source::Generated) {
    const GenSpec spec =
        plan.data.genspec ? *plan.data.genspec : load_genspec(plan.data.genspec_path);
    auto generated = generate(spec);
    out.dataset.recommendations = std::move(generated.recommendations);
    out.dataset.flags = std::move(generated.flags);
    out.arrivals = std::move(generated.arrivals);
    auto provider = CompatibilityProvider::empty();
    for (const auto& row : generated.compatibility_rows) {
      provider.set_entry(row.user, row.agent, row.score);
    }
    out.dataset.compatibilities = std::move(provider);
  } else {
    out.dataset.recommendations = load_recommendations(plan.data.recommendations_path);
    out.dataset.flags = load_item_features(plan.data.item_features_path, agent_features);
    if (!plan.data.compatibilities_path.empty()) {
      out.dataset.compatibilities =
          CompatibilityProvider::from_file(plan.data.compatibilities_path);
    }
    if (!plan.data.rating_profiles_path.empty()) {
      out.dataset.compatibilities.attach_profiles(
          load_rating_profiles(plan.data.rating_profiles_path));
    }
    for (const auto& user : out.dataset.recommendations.user_order) {
      out.arrivals.push_back({user, ""});
    }
  }

  for (const auto& user : out.dataset.recommendations.user_order) {
    for (const auto& id : out.dataset.recommendations.lists.at(user).ids()) {
      if (!out.dataset.flags.has_item(id)) {
        out.dataset.flags.add_item(id);
        ++out.unknown_items;
      }
    }
  }
  if (out.unknown_items > 0 && !quiet) {
    std::cerr << "warning: " << out.unknown_items
              << " recommended items missing from the feature file, treated as unprotected\n";
  }
  out.dataset.flags.require_features(plan.agents);
  return out;
}

std::string cell_dir_name(const ExperimentPlan& plan, AllocationMechanism allocation,
                          ChoiceMechanism choice, std::uint64_t seed) {
  std::string name = to_string(allocation) + "__" + to_string(choice);
  if (plan.seeds.size() > 1) name += "__seed" + std::to_string(seed);
  return name;
}

std::size_t run_to_dir(const ExperimentPlan& plan, const std::string& outdir,
                       const RunnerOptions& options) {
  ExperimentPlan effective = plan;
  if (options.seed_override) effective.seeds = {*options.seed_override};

  const LoadedData data = load_plan_data(effective, options.quiet);
  const bool single_cell = effective.cell_count() == 1;
  fs::create_directories(outdir);

  std::optional<json> genspec_echo;
  if (effective.data.source == DataConfig::Source::Generated) {
    genspec_echo = genspec_to_json(effective.data.genspec
                                       ? *effective.data.genspec
                                       : load_genspec(effective.data.genspec_path));
  }

  std::size_t cells = 0;
  for (const auto allocation : effective.allocations) {
    for (const auto choice : effective.choices) {
      for (const auto seed : effective.seeds) {
        const ExperimentConfig config = effective.cell(allocation, choice, seed);
        const fs::path cell_dir =
            single_cell ? fs::path(outdir)
                        : fs::path(outdir) / cell_dir_name(effective, allocation, choice, seed);
        fs::create_directories(cell_dir);

        const ExperimentLog log = run(config, data.arrivals, data.dataset);
        write_steps_csv(cell_dir / "steps.csv", log);
        write_summary_csv(cell_dir / "summary.csv", log, data);
        write_series_csv(cell_dir / "allocation.csv", log, allocation_counts(log));
        write_series_csv(cell_dir / "fairness_series.csv", log, windowed_fairness_series(log));

        json manifest;
        manifest["kind"] = "run";
        manifest["version"] = kVersion;
        manifest["experiment"] = config_to_json(config);
        if (effective.data.source == DataConfig::Source::Generated) {
          manifest["data"]["source"] = "generated";
          manifest["data"]["genspec"] = *genspec_echo;
        } else {
          manifest["data"]["source"] = "ingested";
          manifest["data"]["recommendations"] = effective.data.recommendations_path;
          manifest["data"]["item_features"] = effective.data.item_features_path;
          if (!effective.data.compatibilities_path.empty()) {
            manifest["data"]["compatibilities"] = effective.data.compatibilities_path;
          }
          if (!effective.data.rating_profiles_path.empty()) {
            manifest["data"]["rating_profiles"] = effective.data.rating_profiles_path;
          }
        }
        write_json(cell_dir / "manifest.json", manifest);

        if (!options.quiet) {
          std::cerr << (single_cell ? std::string("run")
                                    : cell_dir_name(effective, allocation, choice, seed))
                    << ": " << log.steps.size() << " arrivals";
          if (log.skipped_users > 0) std::cerr << ", " << log.skipped_users << " skipped";
          std::cerr << "\n";
        }
        ++cells;
      }
    }
  }
  return cells;
}

std::string summarize_dir(const std::string& outdir) {
  std::vector<std::pair<std::string, fs::path>> cells;
  if (fs::exists(fs::path(outdir) / "summary.csv")) {
    cells.emplace_back(".", fs::path(outdir) / "summary.csv");
  } else if (fs::is_directory(outdir)) {
    for (const auto& entry : fs::directory_iterator(outdir)) {
      if (entry.is_directory() && fs::exists(entry.path() / "summary.csv")) {
        cells.emplace_back(entry.path().filename().string(), entry.path() / "summary.csv");
      }
    }
  }
  if (cells.empty()) throw LoadError("no summary.csv found under " + outdir);
  std::sort(cells.begin(), cells.end());

  std::vector<std::string> metrics;
  std::vector<std::pair<std::string, std::unordered_map<std::string, std::string>>> loaded;
  for (const auto& [name, path] : cells) {
    const auto table = csv::read_file(path.string());
    std::unordered_map<std::string, std::string> values;
    for (const auto& row : table.rows) {
      if (std::find(metrics.begin(), metrics.end(), row.cells[0]) == metrics.end()) {
        metrics.push_back(row.cells[0]);
      }
      values[row.cells[0]] = row.cells[1];
    }
    loaded.emplace_back(name, std::move(values));
  }

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"cell"};
  header.insert(header.end(), metrics.begin(), metrics.end());
  grid.push_back(std::move(header));
  for (const auto& [name, values] : loaded) {
    std::vector<std::string> row = {name};
    for (const auto& metric : metrics) {
      auto it = values.find(metric);
      row.push_back(it == values.end() ? "-" : it->second);
    }
    grid.push_back(std::move(row));
  }

  std::vector<std::size_t> widths(grid[0].size(), 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fairsim
