#include "fairsim/datagen.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace fairsim {

namespace {

std::string pad_index(std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

std::size_t digit_width(std::size_t n) { return std::to_string(n).size(); }

bool order_is_mixed(const GenSpec& spec) {
  return spec.order.size() == 1 && spec.order[0] == "mixed";
}

}  // namespace

std::size_t GenSpec::total_users() const {
  std::size_t total = 0;
  for (const auto& r : regimes) total += r.count;
  return total;
}

void GenSpec::validate() const {
  if (n_items == 0) throw ConfigError("n_items must be positive");
  if (n_factors == 0) throw ConfigError("n_factors must be positive");
  if (n_sensitive > n_factors) throw ConfigError("n_sensitive exceeds n_factors");
  if (feature_names.size() != n_sensitive) {
    throw ConfigError("feature_names must list one name per sensitive factor");
  }
  std::unordered_set<std::string> seen_features;
  for (const auto& f : feature_names) {
    if (f.empty()) throw ConfigError("feature names must be non-empty");
    if (!seen_features.insert(f).second) throw ConfigError("duplicate feature name: " + f);
  }
  if (item_propensities.size() != n_factors) {
    throw ConfigError("item_propensities must list one probability per factor");
  }
  for (double p : item_propensities) {
    if (p < 0.0 || p > 1.0) throw ConfigError("item propensities must lie in [0,1]");
  }
  if (factor_stddev < 0.0) throw ConfigError("factor_stddev must be non-negative");
  if (list_size == 0) throw ConfigError("list_size must be positive");
  if (list_size > sample_size) throw ConfigError("list_size exceeds sample_size");
  if (sample_size > n_items) throw ConfigError("sample_size exceeds n_items");
  if (regimes.empty()) throw ConfigError("at least one regime is required");
  std::unordered_set<std::string> seen_regimes;
  for (const auto& r : regimes) {
    if (r.name.empty()) throw ConfigError("regime names must be non-empty");
    if (r.name == "mixed") throw ConfigError("\"mixed\" is reserved as an order token");
    if (!seen_regimes.insert(r.name).second) throw ConfigError("duplicate regime name: " + r.name);
    if (r.count == 0) throw ConfigError("regime " + r.name + ": count must be positive");
    if (r.propensity_means.size() != n_factors || r.propensity_stddevs.size() != n_factors) {
      throw ConfigError("regime " + r.name + ": propensity arrays must cover every factor");
    }
    for (double s : r.propensity_stddevs) {
      if (s < 0.0) throw ConfigError("regime " + r.name + ": stddevs must be non-negative");
    }
  }
  if (!order.empty() && !(order.size() == 1 && order[0] == "mixed")) {
    if (order.size() != regimes.size()) {
      throw ConfigError("order must list every regime exactly once, or be \"mixed\"");
    }
    std::unordered_set<std::string> seen_order;
    for (const auto& name : order) {
      if (seen_regimes.find(name) == seen_regimes.end()) {
        throw ConfigError("order names unknown regime: " + name);
      }
      if (!seen_order.insert(name).second) throw ConfigError("order repeats regime: " + name);
    }
  }
  if (declared_users != 0 && declared_users != total_users()) {
    throw ConfigError("n_users does not match the sum of regime counts");
  }
}

UserSample gen_user(const RegimeSpec& regime, double factor_stddev, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(regime.propensity_means.size());
  UserSample out;
  out.propensities.resize(k);
  out.factors.resize(k);
  for (Eigen::Index f = 0; f < k; ++f) {
    out.propensities[f] =
        rng.normal(regime.propensity_means[static_cast<std::size_t>(f)],
                   regime.propensity_stddevs[static_cast<std::size_t>(f)]);
  }
  for (Eigen::Index f = 0; f < k; ++f) {
    out.factors[f] = rng.normal(out.propensities[f], factor_stddev);
  }
  return out;
}

ItemSample gen_item(const GenSpec& spec, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(spec.n_factors);
  ItemSample out;
  out.propensities.resize(k);
  for (Eigen::Index f = 0; f < k; ++f) {
    out.propensities[f] =
        rng.bernoulli(spec.item_propensities[static_cast<std::size_t>(f)]) ? 1.0 : 0.0;
  }
  if (spec.exact_binary_items) {
    out.factors = out.propensities;
  } else {
    out.factors.resize(k);
    for (Eigen::Index f = 0; f < k; ++f) {
      out.factors[f] = rng.normal(out.propensities[f], spec.factor_stddev);
    }
  }
  return out;
}

ScoredList gen_recommendations(const Eigen::VectorXd& user_factors,
                               const std::vector<ItemId>& item_ids,
                               const Eigen::MatrixXd& item_factors, std::size_t sample_size,
                               std::size_t list_size, Rng& rng) {
  if (sample_size > item_ids.size()) throw std::invalid_argument("sample_size exceeds catalog");
  if (list_size > sample_size) throw std::invalid_argument("list_size exceeds sample_size");
  const auto picks = rng.sample_indices(item_ids.size(), sample_size);
  std::vector<ScoredEntry> scored;
  scored.reserve(picks.size());
  for (std::size_t idx : picks) {
    const double score = item_factors.row(static_cast<Eigen::Index>(idx)).dot(user_factors);
    scored.push_back({item_ids[idx], score});
  }
  return ScoredList::ranked(std::move(scored)).truncated(list_size);
}

std::vector<Arrival> sequence_arrivals(const GenSpec& spec,
                                       const std::vector<GeneratedUser>& users, Rng& rng) {
  std::vector<Arrival> arrivals;
  arrivals.reserve(users.size());
  if (order_is_mixed(spec)) {
    for (const auto& u : users) arrivals.push_back({u.id, u.regime});
    rng.shuffle(arrivals);
    return arrivals;
  }
  std::vector<std::string> order = spec.order;
  if (order.empty()) {
    for (const auto& r : spec.regimes) order.push_back(r.name);
  }
  std::unordered_map<std::string, std::vector<const GeneratedUser*>> by_regime;
  for (const auto& u : users) by_regime[u.regime].push_back(&u);
  for (const auto& name : order) {
    auto it = by_regime.find(name);
    if (it == by_regime.end()) throw ConfigError("order names unknown regime: " + name);
    for (const auto* u : it->second) arrivals.push_back({u->id, u->regime});
  }
  return arrivals;
}

GeneratedDataset generate(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  GeneratedDataset out;
  out.feature_names = spec.feature_names;

  const std::size_t item_width = digit_width(spec.n_items);
  out.item_ids.reserve(spec.n_items);
  out.item_factors.resize(static_cast<Eigen::Index>(spec.n_items),
                          static_cast<Eigen::Index>(spec.n_factors));
  for (const auto& f : spec.feature_names) out.flags.add_feature(f);
  for (std::size_t j = 0; j < spec.n_items; ++j) {
    const auto item = gen_item(spec, rng);
    ItemId id = "i" + pad_index(j + 1, item_width);
    out.flags.add_item(id);
    for (std::size_t f = 0; f < spec.n_sensitive; ++f) {
      if (item.propensities[static_cast<Eigen::Index>(f)] == 1.0) {
        out.flags.set_protected(spec.feature_names[f], id);
      }
    }
    out.item_factors.row(static_cast<Eigen::Index>(j)) = item.factors.transpose();
    out.item_ids.push_back(std::move(id));
  }

  out.users.reserve(spec.total_users());
  for (const auto& regime : spec.regimes) {
    const std::size_t user_width = digit_width(regime.count);
    for (std::size_t i = 0; i < regime.count; ++i) {
      auto sample = gen_user(regime, spec.factor_stddev, rng);
      GeneratedUser user;
      user.id = regime.name + "_" + pad_index(i + 1, user_width);
      user.regime = regime.name;
      user.propensities = std::move(sample.propensities);
      user.factors = std::move(sample.factors);
      out.users.push_back(std::move(user));
    }
  }

  out.arrivals = sequence_arrivals(spec, out.users, rng);

  std::unordered_map<std::string, const GeneratedUser*> by_id;
  for (const auto& u : out.users) by_id.emplace(u.id, &u);
  for (const auto& arrival : out.arrivals) {
    const GeneratedUser* user = by_id.at(arrival.user);
    out.recommendations.user_order.push_back(arrival.user);
    out.recommendations.lists.emplace(
        arrival.user, gen_recommendations(user->factors, out.item_ids, out.item_factors,
                                          spec.sample_size, spec.list_size, rng));
    for (std::size_t f = 0; f < spec.n_sensitive; ++f) {
      const double raw = user->propensities[static_cast<Eigen::Index>(f)];
      out.compatibility_rows.push_back(
          {arrival.user, spec.feature_names[f], std::clamp(raw, 0.0, 1.0)});
    }
  }
  return out;
}

}  // namespace fairsim
