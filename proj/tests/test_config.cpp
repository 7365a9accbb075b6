#include <string>
#include <vector>

#include "doctest.h"
#include "fairsim/config.hpp"
#include "fairsim/types.hpp"
#include "support.hpp"

using namespace fairsim;
using testsupport::TempDir;

namespace {

const char* kGenspecText = R"({
  "n_items": 30,
  "n_factors": 3,
  "n_sensitive": 2,
  "feature_names": ["feat1", "feat2"],
  "item_propensities": [0.1, 0.2, 0.9],
  "factor_stddev": 0.5,
  "sample_size": 12,
  "list_size": 6,
  "seed": 42,
  "n_users": 5,
  "regimes": [
    {"name": "r1", "count": 3,
     "propensity_means": [0.5, 0.6, 0.0],
     "propensity_stddevs": [0.06, 0.08, 1.0]},
    {"name": "r2", "count": 2,
     "propensity_means": [0.2, 0.9, 0.0],
     "propensity_stddevs": [0.05, 0.05, 1.0]}
  ],
  "order": ["r2", "r1"]
})";

std::string experiment_text(const std::string& extra = "") {
  return std::string(R"({
  "agents": [
    {"name": "g1", "feature": "feat1", "target_proportion": 0.25, "delta": 0.1},
    {"name": "g2", "feature": "feat2"}
  ],
  "allocation": "lottery",
  "choice": ["borda", "copeland"],
  "seed": [1, 2],
  "window": 50,
  "list_length": 5)") +
         extra + R"(,
  "data": {
    "source": "ingested",
    "recommendations": "recs.csv",
    "item_features": "features.csv"
  }
})";
}

}  // namespace

TEST_CASE("a full genspec parses with every field") {
  GenSpec spec = parse_genspec_text(kGenspecText, "test");
  CHECK(spec.n_items == 30);
  CHECK(spec.n_factors == 3);
  CHECK(spec.n_sensitive == 2);
  CHECK(spec.feature_names == std::vector<std::string>{"feat1", "feat2"});
  CHECK(spec.item_propensities == std::vector<double>{0.1, 0.2, 0.9});
  CHECK(spec.factor_stddev == 0.5);
  CHECK_FALSE(spec.exact_binary_items);
  CHECK(spec.sample_size == 12);
  CHECK(spec.list_size == 6);
  CHECK(spec.seed == 42);
  CHECK(spec.declared_users == 5);
  REQUIRE(spec.regimes.size() == 2);
  CHECK(spec.regimes[0].name == "r1");
  CHECK(spec.regimes[1].count == 2);
  CHECK(spec.order == std::vector<std::string>{"r2", "r1"});
  CHECK(spec.total_users() == 5);
}

TEST_CASE("genspec defaults cover the optional knobs") {
  GenSpec spec = parse_genspec_text(R"({
    "n_items": 300,
    "n_factors": 1,
    "n_sensitive": 1,
    "feature_names": ["feat1"],
    "item_propensities": [0.5],
    "regimes": [{"name": "r", "count": 2,
                 "propensity_means": [0.5], "propensity_stddevs": [0.1]}]
  })",
                                    "test");
  CHECK(spec.factor_stddev == 1.0);
  CHECK(spec.sample_size == 200);
  CHECK(spec.list_size == 50);
  CHECK(spec.seed == 0);
  CHECK(spec.order.empty());
  CHECK(spec.declared_users == 0);
}

TEST_CASE("genspec order accepts the bare mixed token") {
  GenSpec spec = parse_genspec_text(R"({
    "n_items": 300,
    "n_factors": 1,
    "n_sensitive": 1,
    "feature_names": ["feat1"],
    "item_propensities": [0.5],
    "order": "mixed",
    "regimes": [{"name": "r", "count": 2,
                 "propensity_means": [0.5], "propensity_stddevs": [0.1]}]
  })",
                                    "test");
  CHECK(spec.order == std::vector<std::string>{"mixed"});
}

TEST_CASE("genspec parsing rejects unknown keys with their path") {
  CHECK_THROWS_WITH_AS(parse_genspec_text(R"({"n_items": 10, "typo_key": 1})", "test"),
                       "test: unknown key \"typo_key\"", ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_genspec_text(R"({
        "n_items": 300, "n_factors": 1, "n_sensitive": 1,
        "feature_names": ["feat1"], "item_propensities": [0.5],
        "regimes": [{"name": "r", "count": 2, "extra": true,
                     "propensity_means": [0.5], "propensity_stddevs": [0.1]}]
      })",
                         "test"),
      "test: regimes[0]: unknown key \"extra\"", ConfigError);
}

TEST_CASE("genspec parsing reports missing and mistyped keys") {
  CHECK_THROWS_WITH_AS(parse_genspec_text(R"({"n_factors": 1})", "test"),
                       "test: missing required key \"n_items\"", ConfigError);
  CHECK_THROWS_WITH_AS(parse_genspec_text(R"({"n_items": -5})", "test"),
                       "test: n_items: expected a non-negative integer", ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_genspec_text(
          R"({"n_items": 10, "n_factors": 1, "n_sensitive": 1, "item_propensities": "high"})",
          "test"),
      "test: item_propensities: expected an array of numbers", ConfigError);
}

TEST_CASE("genspec validation failures carry the origin") {
  // sample_size beyond the catalog.
  CHECK_THROWS_AS(parse_genspec_text(R"({
    "n_items": 10, "n_factors": 1, "n_sensitive": 1,
    "feature_names": ["feat1"], "item_propensities": [0.5],
    "sample_size": 20, "list_size": 5,
    "regimes": [{"name": "r", "count": 1,
                 "propensity_means": [0.5], "propensity_stddevs": [0.1]}]
  })",
                                     "test"),
                  ConfigError);
}

TEST_CASE("malformed json names the origin") {
  CHECK_THROWS_AS(parse_genspec_text("{not json", "broken.json"), ConfigError);
  try {
    parse_genspec_text("{not json", "broken.json");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("broken.json") == 0);
  }
}

TEST_CASE("an experiment plan parses agents and the grid") {
  ExperimentPlan plan = parse_experiment_text(experiment_text(), "test");
  REQUIRE(plan.agents.size() == 2);
  CHECK(plan.agents[0].name == "g1");
  CHECK(plan.agents[0].protected_feature == "feat1");
  CHECK(plan.agents[0].target_proportion == 0.25);
  CHECK(plan.agents[0].delta == 0.1);
  CHECK(plan.agents[1].target_proportion == 0.25);  // default
  CHECK(plan.agents[1].delta == 0.1);               // default

  CHECK(plan.allocations == std::vector<AllocationMechanism>{AllocationMechanism::Lottery});
  CHECK(plan.choices ==
        std::vector<ChoiceMechanism>{ChoiceMechanism::Borda, ChoiceMechanism::Copeland});
  CHECK(plan.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(plan.window == 50);
  CHECK(plan.list_length == 5);
  CHECK(plan.cell_count() == 4);
  CHECK(plan.data.source == DataConfig::Source::Ingested);
}

TEST_CASE("experiment defaults fill in when keys are absent") {
  ExperimentPlan plan = parse_experiment_text(R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "ingested",
             "recommendations": "r.csv", "item_features": "f.csv"}
  })",
                                              "test");
  CHECK(plan.seeds == std::vector<std::uint64_t>{0});
  CHECK(plan.window == 100);
  CHECK(plan.list_length == 10);
  CHECK(plan.recommender_weight == 1.0);
  CHECK(plan.compatibility_exponent == 2.0);
  CHECK(plan.cell_count() == 1);
}

TEST_CASE("a cell carries the plan's shared settings") {
  ExperimentPlan plan = parse_experiment_text(experiment_text(), "test");
  ExperimentConfig config =
      plan.cell(AllocationMechanism::Lottery, ChoiceMechanism::Copeland, 7);
  CHECK(config.agents.size() == 2);
  CHECK(config.allocation == AllocationMechanism::Lottery);
  CHECK(config.choice == ChoiceMechanism::Copeland);
  CHECK(config.seed == 7);
  CHECK(config.window == 50);
  CHECK(config.list_length == 5);
}

TEST_CASE("grid lists reject duplicates and unknown names") {
  std::string dup = experiment_text();
  auto pos = dup.find("[\"borda\", \"copeland\"]");
  REQUIRE(pos != std::string::npos);
  dup.replace(pos, std::string("[\"borda\", \"copeland\"]").size(), "[\"borda\", \"borda\"]");
  CHECK_THROWS_WITH_AS(parse_experiment_text(dup, "test"),
                       "test: choice: duplicate grid entries", ConfigError);

  std::string unknown = experiment_text();
  pos = unknown.find("\"lottery\"");
  REQUIRE(pos != std::string::npos);
  unknown.replace(pos, std::string("\"lottery\"").size(), "\"raffle\"");
  CHECK_THROWS_WITH_AS(parse_experiment_text(unknown, "test"),
                       "test: allocation: unknown allocation mechanism: raffle", ConfigError);
}

TEST_CASE("experiment configs reject unknown keys") {
  CHECK_THROWS_WITH_AS(parse_experiment_text(experiment_text(",\n  \"typo\": 3"), "test"),
                       "test: unknown key \"typo\"", ConfigError);
}

TEST_CASE("generated data needs exactly one genspec reference") {
  const char* both = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "generated",
             "genspec_path": "g.json",
             "genspec": {"n_items": 10, "n_factors": 1, "n_sensitive": 1,
                         "feature_names": ["feat1"], "item_propensities": [0.5],
                         "sample_size": 5, "list_size": 2,
                         "regimes": [{"name": "r", "count": 1,
                                      "propensity_means": [0.5],
                                      "propensity_stddevs": [0.1]}]}}
  })";
  CHECK_THROWS_WITH_AS(parse_experiment_text(both, "test"),
                       "test: data: generated data needs exactly one of \"genspec\" or "
                       "\"genspec_path\"",
                       ConfigError);

  const char* neither = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "generated"}
  })";
  CHECK_THROWS_AS(parse_experiment_text(neither, "test"), ConfigError);
}

TEST_CASE("data keys are scoped to their source") {
  const char* generated_with_recs = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "generated", "genspec_path": "g.json",
             "recommendations": "r.csv"}
  })";
  CHECK_THROWS_WITH_AS(parse_experiment_text(generated_with_recs, "test"),
                       "test: data.recommendations: only valid when source is \"ingested\"",
                       ConfigError);

  const char* ingested_with_spec = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "ingested", "genspec_path": "g.json",
             "recommendations": "r.csv", "item_features": "f.csv"}
  })";
  CHECK_THROWS_WITH_AS(parse_experiment_text(ingested_with_spec, "test"),
                       "test: data.genspec_path: only valid when source is \"generated\"",
                       ConfigError);

  const char* ingested_missing = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "ingested", "recommendations": "r.csv"}
  })";
  CHECK_THROWS_AS(parse_experiment_text(ingested_missing, "test"), ConfigError);

  const char* bad_source = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "streamed"}
  })";
  CHECK_THROWS_WITH_AS(parse_experiment_text(bad_source, "test"),
                       "test: data.source: expected \"generated\" or \"ingested\"", ConfigError);
}

TEST_CASE("relative data paths resolve against the config directory") {
  TempDir dir("config");
  dir.write_file("recs.csv", "user_id,item_id,score\nu1,i1,0.5\n");
  dir.write_file("features.csv", "item_id,feat1,feat2\ni1,1,0\n");
  auto config_path = dir.write_file("experiment.json", experiment_text());

  ExperimentPlan plan = load_experiment(config_path);
  CHECK(plan.data.recommendations_path == (dir.path() / "recs.csv").string());
  CHECK(plan.data.item_features_path == (dir.path() / "features.csv").string());
}

TEST_CASE("absolute data paths pass through unchanged") {
  TempDir dir("config_abs");
  std::string abs = (dir.path() / "elsewhere.csv").string();
  std::string text = experiment_text();
  auto pos = text.find("recs.csv");
  text.replace(pos, std::string("recs.csv").size(), abs);
  auto config_path = dir.write_file("experiment.json", text);

  ExperimentPlan plan = load_experiment(config_path);
  CHECK(plan.data.recommendations_path == abs);
}

TEST_CASE("loading a missing config file fails cleanly") {
  CHECK_THROWS_AS(load_experiment("/nonexistent/experiment.json"), LoadError);
  CHECK_THROWS_AS(load_genspec("/nonexistent/genspec.json"), LoadError);
}

TEST_CASE("an invalid cell is caught at parse time") {
  std::string text = experiment_text();
  auto pos = text.find("\"list_length\": 5");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, std::string("\"list_length\": 5").size(), "\"list_length\": 0");
  CHECK_THROWS_AS(parse_experiment_text(text, "test"), ConfigError);
}

TEST_CASE("an inline genspec parses inside the data block") {
  const char* text = R"({
    "agents": [{"name": "g1", "feature": "feat1"}],
    "allocation": "least_fair",
    "choice": "rescoring",
    "data": {"source": "generated",
             "genspec": {"n_items": 10, "n_factors": 1, "n_sensitive": 1,
                         "feature_names": ["feat1"], "item_propensities": [0.5],
                         "sample_size": 5, "list_size": 2,
                         "regimes": [{"name": "r", "count": 1,
                                      "propensity_means": [0.5],
                                      "propensity_stddevs": [0.1]}]}}
  })";
  ExperimentPlan plan = parse_experiment_text(text, "test");
  REQUIRE(plan.data.genspec.has_value());
  CHECK(plan.data.genspec->n_items == 10);
  CHECK(plan.data.genspec->list_size == 2);
}
