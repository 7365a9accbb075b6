#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fairsim/ingest.hpp"
#include "fairsim/rng.hpp"
#include "fairsim/types.hpp"

namespace fairsim {

/// One batch of users drawn from a shared propensity distribution. Means
/// and stddevs cover every latent factor; the sensitive factors come first.
struct RegimeSpec {
  std::string name;
  std::size_t count = 0;
  std::vector<double> propensity_means;
  std::vector<double> propensity_stddevs;
};

struct GenSpec {
  std::size_t n_items = 0;
  std::size_t n_factors = 0;
  std::size_t n_sensitive = 0;
  std::vector<std::string> feature_names;
  std::vector<double> item_propensities;
  double factor_stddev = 1.0;
  bool exact_binary_items = false;
  std::size_t sample_size = 200;
  std::size_t list_size = 50;
  std::uint64_t seed = 0;
  std::vector<RegimeSpec> regimes;
  /// Regime names in arrival order, or the single token "mixed" for a
  /// uniform shuffle of all users. Empty means declaration order.
  std::vector<std::string> order;
  /// Optional cross-check against the regime counts; 0 disables it.
  std::size_t declared_users = 0;

  std::size_t total_users() const;
  void validate() const;
};

struct UserSample {
  Eigen::VectorXd propensities;
  Eigen::VectorXd factors;
};

struct ItemSample {
  Eigen::VectorXd propensities;
  Eigen::VectorXd factors;
};

/// Draws per-factor propensities from the regime's normals, then a latent
/// vector centered on them. Consumes 2k normals in factor order.
UserSample gen_user(const RegimeSpec& regime, double factor_stddev, Rng& rng);

/// Draws binary propensities per factor, then a latent vector centered on
/// them (or equal to them when `exact_binary_items` is set).
ItemSample gen_item(const GenSpec& spec, Rng& rng);

/// Samples `sample_size` distinct items uniformly, scores them by dot
/// product with the user's factors, and keeps the `list_size` best.
ScoredList gen_recommendations(const Eigen::VectorXd& user_factors,
                               const std::vector<ItemId>& item_ids,
                               const Eigen::MatrixXd& item_factors, std::size_t sample_size,
                               std::size_t list_size, Rng& rng);

struct GeneratedUser {
  std::string id;
  std::string regime;
  Eigen::VectorXd propensities;
  Eigen::VectorXd factors;
};

/// Expands the spec's order into one arrival per user. "mixed" shuffles
/// the union of all regimes uniformly.
std::vector<Arrival> sequence_arrivals(const GenSpec& spec,
                                       const std::vector<GeneratedUser>& users, Rng& rng);

struct GeneratedDataset {
  std::vector<std::string> feature_names;
  std::vector<ItemId> item_ids;
  Eigen::MatrixXd item_factors;
  FeatureFlags flags;
  std::vector<GeneratedUser> users;
  std::vector<Arrival> arrivals;
  RecommendationSet recommendations;
  std::vector<CompatibilityRow> compatibility_rows;
};

/// Runs the whole pipeline off a single seeded stream: items, then users
/// regime by regime, then arrival sequencing, then per-arrival sampling.
/// Fixed seed means byte-identical output files.
GeneratedDataset generate(const GenSpec& spec);

}  // namespace fairsim
