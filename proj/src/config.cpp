#include "fairsim/config.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <unordered_set>

#include <json.hpp>

namespace fairsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
  throw ConfigError(origin + ": " + (path.empty() ? what : path + ": " + what));
}

std::string child(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string elem(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void check_keys(const json& obj, const std::string& origin, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(origin, path, "unknown key \"" + it.key() + "\"");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& origin,
                    const std::string& path) {
  const json* value = find(obj, key);
  if (value == nullptr) fail(origin, path, "missing required key \"" + std::string(key) + "\"");
  return *value;
}

double as_double(const json& value, const std::string& origin, const std::string& path) {
  if (!value.is_number()) fail(origin, path, "expected a number");
  return value.get<double>();
}

bool as_bool(const json& value, const std::string& origin, const std::string& path) {
  if (!value.is_boolean()) fail(origin, path, "expected true or false");
  return value.get<bool>();
}

std::string as_string(const json& value, const std::string& origin, const std::string& path) {
  if (!value.is_string()) fail(origin, path, "expected a string");
  return value.get<std::string>();
}

std::uint64_t as_u64(const json& value, const std::string& origin, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  fail(origin, path, "expected a non-negative integer");
}

std::size_t as_size(const json& value, const std::string& origin, const std::string& path) {
  return static_cast<std::size_t>(as_u64(value, origin, path));
}

std::vector<double> as_double_array(const json& value, const std::string& origin,
                                    const std::string& path) {
  if (!value.is_array()) fail(origin, path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_double(value[i], origin, elem(path, i)));
  }
  return out;
}

std::vector<std::string> as_string_array(const json& value, const std::string& origin,
                                         const std::string& path) {
  if (!value.is_array()) fail(origin, path, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_string(value[i], origin, elem(path, i)));
  }
  return out;
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string resolve_path(const std::string& raw, const std::string& base_dir) {
  if (raw.empty() || base_dir.empty()) return raw;
  std::filesystem::path p(raw);
  if (p.is_absolute()) return raw;
  return (std::filesystem::path(base_dir) / p).string();
}

RegimeSpec regime_from_json(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_object()) fail(origin, path, "expected an object");
  check_keys(j, origin, path, {"name", "count", "propensity_means", "propensity_stddevs"});
  RegimeSpec regime;
  regime.name = as_string(require(j, "name", origin, path), origin, child(path, "name"));
  regime.count = as_size(require(j, "count", origin, path), origin, child(path, "count"));
  regime.propensity_means = as_double_array(require(j, "propensity_means", origin, path), origin,
                                            child(path, "propensity_means"));
  regime.propensity_stddevs = as_double_array(require(j, "propensity_stddevs", origin, path),
                                              origin, child(path, "propensity_stddevs"));
  return regime;
}

GenSpec genspec_from_json(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_object()) fail(origin, path, "expected an object");
  check_keys(j, origin, path,
             {"n_items", "n_factors", "n_sensitive", "feature_names", "item_propensities",
              "factor_stddev", "exact_binary_items", "sample_size", "list_size", "seed",
              "n_users", "regimes", "order"});
  GenSpec spec;
  spec.n_items = as_size(require(j, "n_items", origin, path), origin, child(path, "n_items"));
  spec.n_factors =
      as_size(require(j, "n_factors", origin, path), origin, child(path, "n_factors"));
  spec.n_sensitive =
      as_size(require(j, "n_sensitive", origin, path), origin, child(path, "n_sensitive"));
  if (const json* v = find(j, "feature_names")) {
    spec.feature_names = as_string_array(*v, origin, child(path, "feature_names"));
  }
  spec.item_propensities = as_double_array(require(j, "item_propensities", origin, path), origin,
                                           child(path, "item_propensities"));
  if (const json* v = find(j, "factor_stddev")) {
    spec.factor_stddev = as_double(*v, origin, child(path, "factor_stddev"));
  }
  if (const json* v = find(j, "exact_binary_items")) {
    spec.exact_binary_items = as_bool(*v, origin, child(path, "exact_binary_items"));
  }
  if (const json* v = find(j, "sample_size")) {
    spec.sample_size = as_size(*v, origin, child(path, "sample_size"));
  }
  if (const json* v = find(j, "list_size")) {
    spec.list_size = as_size(*v, origin, child(path, "list_size"));
  }
  if (const json* v = find(j, "seed")) spec.seed = as_u64(*v, origin, child(path, "seed"));
  if (const json* v = find(j, "n_users")) {
    spec.declared_users = as_size(*v, origin, child(path, "n_users"));
  }
  const json& regimes = require(j, "regimes", origin, path);
  if (!regimes.is_array() || regimes.empty()) {
    fail(origin, child(path, "regimes"), "expected a non-empty array");
  }
  for (std::size_t i = 0; i < regimes.size(); ++i) {
    spec.regimes.push_back(
        regime_from_json(regimes[i], origin, elem(child(path, "regimes"), i)));
  }
  if (const json* v = find(j, "order")) {
    if (v->is_string()) {
      spec.order = {v->get<std::string>()};
    } else {
      spec.order = as_string_array(*v, origin, child(path, "order"));
    }
  }
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    fail(origin, path, e.what());
  }
  return spec;
}

AgentSpec agent_from_json(const json& j, const std::string& origin, const std::string& path) {
  if (!j.is_object()) fail(origin, path, "expected an object");
  check_keys(j, origin, path, {"name", "feature", "target_proportion", "delta"});
  AgentSpec agent;
  agent.name = as_string(require(j, "name", origin, path), origin, child(path, "name"));
  agent.protected_feature =
      as_string(require(j, "feature", origin, path), origin, child(path, "feature"));
  if (const json* v = find(j, "target_proportion")) {
    agent.target_proportion = as_double(*v, origin, child(path, "target_proportion"));
  }
  if (const json* v = find(j, "delta")) agent.delta = as_double(*v, origin, child(path, "delta"));
  try {
    agent.validate();
  } catch (const ConfigError& e) {
    fail(origin, path, e.what());
  }
  return agent;
}

DataConfig data_from_json(const json& j, const std::string& origin, const std::string& path,
                          const std::string& base_dir) {
  if (!j.is_object()) fail(origin, path, "expected an object");
  check_keys(j, origin, path,
             {"source", "genspec", "genspec_path", "recommendations", "item_features",
              "compatibilities", "rating_profiles"});
  DataConfig data;
  const std::string source =
      as_string(require(j, "source", origin, path), origin, child(path, "source"));
  if (source == "generated") {
    data.source = DataConfig::Source::Generated;
    const json* inline_spec = find(j, "genspec");
    const json* spec_path = find(j, "genspec_path");
    if ((inline_spec != nullptr) == (spec_path != nullptr)) {
      fail(origin, path, "generated data needs exactly one of \"genspec\" or \"genspec_path\"");
    }
    for (const char* key : {"recommendations", "item_features", "compatibilities",
                            "rating_profiles"}) {
      if (find(j, key)) {
        fail(origin, child(path, key), "only valid when source is \"ingested\"");
      }
    }
    if (inline_spec) {
      data.genspec = genspec_from_json(*inline_spec, origin, child(path, "genspec"));
    } else {
      data.genspec_path = resolve_path(
          as_string(*spec_path, origin, child(path, "genspec_path")), base_dir);
    }
  } else if (source == "ingested") {
    data.source = DataConfig::Source::Ingested;
    for (const char* key : {"genspec", "genspec_path"}) {
      if (find(j, key)) {
        fail(origin, child(path, key), "only valid when source is \"generated\"");
      }
    }
    data.recommendations_path = resolve_path(
        as_string(require(j, "recommendations", origin, path), origin,
                  child(path, "recommendations")),
        base_dir);
    data.item_features_path = resolve_path(
        as_string(require(j, "item_features", origin, path), origin,
                  child(path, "item_features")),
        base_dir);
    if (const json* v = find(j, "compatibilities")) {
      data.compatibilities_path =
          resolve_path(as_string(*v, origin, child(path, "compatibilities")), base_dir);
    }
    if (const json* v = find(j, "rating_profiles")) {
      data.rating_profiles_path =
          resolve_path(as_string(*v, origin, child(path, "rating_profiles")), base_dir);
    }
  } else {
    fail(origin, child(path, "source"), "expected \"generated\" or \"ingested\"");
  }
  return data;
}

template <typename T, typename Parse>
std::vector<T> scalar_or_list(const json& value, const std::string& origin,
                              const std::string& path, Parse parse) {
  std::vector<T> out;
  if (value.is_array()) {
    if (value.empty()) fail(origin, path, "expected at least one entry");
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(parse(value[i], elem(path, i)));
    }
  } else {
    out.push_back(parse(value, path));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t k = i + 1; k < out.size(); ++k) {
      if (out[i] == out[k]) fail(origin, path, "duplicate grid entries");
    }
  }
  return out;
}

ExperimentPlan plan_from_json(const json& j, const std::string& origin,
                              const std::string& base_dir) {
  if (!j.is_object()) fail(origin, "", "expected a top-level object");
  check_keys(j, origin, "",
             {"agents", "allocation", "choice", "seed", "recommender_weight",
              "compatibility_exponent", "window", "list_length", "data"});
  ExperimentPlan plan;

  const json& agents = require(j, "agents", origin, "");
  if (!agents.is_array() || agents.empty()) fail(origin, "agents", "expected a non-empty array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    plan.agents.push_back(agent_from_json(agents[i], origin, elem("agents", i)));
  }

  plan.allocations = scalar_or_list<AllocationMechanism>(
      require(j, "allocation", origin, ""), origin, "allocation",
      [&](const json& v, const std::string& p) {
        try {
          return parse_allocation(as_string(v, origin, p));
        } catch (const ConfigError& e) {
          fail(origin, p, e.what());
        }
      });
  plan.choices = scalar_or_list<ChoiceMechanism>(
      require(j, "choice", origin, ""), origin, "choice",
      [&](const json& v, const std::string& p) {
        try {
          return parse_choice(as_string(v, origin, p));
        } catch (const ConfigError& e) {
          fail(origin, p, e.what());
        }
      });
  if (const json* v = find(j, "seed")) {
    plan.seeds = scalar_or_list<std::uint64_t>(
        *v, origin, "seed",
        [&](const json& s, const std::string& p) { return as_u64(s, origin, p); });
  } else {
    plan.seeds = {0};
  }

  if (const json* v = find(j, "recommender_weight")) {
    plan.recommender_weight = as_double(*v, origin, "recommender_weight");
  }
  if (const json* v = find(j, "compatibility_exponent")) {
    plan.compatibility_exponent = as_double(*v, origin, "compatibility_exponent");
  }
  if (const json* v = find(j, "window")) plan.window = as_size(*v, origin, "window");
  if (const json* v = find(j, "list_length")) {
    plan.list_length = as_size(*v, origin, "list_length");
  }
  plan.data = data_from_json(require(j, "data", origin, ""), origin, "data", base_dir);

  try {
    plan.cell(plan.allocations.front(), plan.choices.front(), plan.seeds.front()).validate();
  } catch (const ConfigError& e) {
    fail(origin, "", e.what());
  }
  return plan;
}

}  // namespace

ExperimentConfig ExperimentPlan::cell(AllocationMechanism allocation, ChoiceMechanism choice,
                                      std::uint64_t seed) const {
  ExperimentConfig config;
  config.agents = agents;
  config.allocation = allocation;
  config.choice = choice;
  config.recommender_weight = recommender_weight;
  config.compatibility_exponent = compatibility_exponent;
  config.window = window;
  config.list_length = list_length;
  config.seed = seed;
  return config;
}

GenSpec parse_genspec_text(const std::string& text, const std::string& origin) {
  return genspec_from_json(parse_json(text, origin), origin, "");
}

GenSpec load_genspec(const std::string& path) {
  return parse_genspec_text(read_text(path), path);
}

ExperimentPlan parse_experiment_text(const std::string& text, const std::string& origin) {
  return plan_from_json(parse_json(text, origin), origin, "");
}

ExperimentPlan load_experiment(const std::string& path) {
  const std::string base_dir = std::filesystem::path(path).parent_path().string();
  return plan_from_json(parse_json(read_text(path), path), path, base_dir);
}

}  // namespace fairsim
