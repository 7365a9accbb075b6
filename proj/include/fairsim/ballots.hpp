#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairsim/types.hpp"

namespace fairsim {

/// Weighted weak order over a candidate set: an ordered sequence of
/// indifference tiers, earlier tiers strictly preferred. The recommender's
/// ballot additionally carries the raw scores behind its ranking.
struct Ballot {
  std::vector<std::vector<ItemId>> tiers;
  double weight = 0.0;
  std::optional<std::unordered_map<ItemId, double>> scores;

  /// Strict total order induced by a scored list (one item per tier).
  static Ballot strict(const ScoredList& list, double weight);

  static Ballot tiered(std::vector<std::vector<ItemId>> tiers, double weight);
};

/// The recommender ballot plus the allocated agents' ballots, all over the
/// same candidate set.
struct Profile {
  std::vector<ItemId> candidates;
  Ballot recommender;
  std::vector<std::pair<AgentSpec, Ballot>> agent_ballots;

  static Profile build(const ScoredList& recommended, double recommender_weight);

  /// Every ballot's tiers must partition `candidates` exactly and the
  /// recommender ballot must score every candidate; throws otherwise.
  void validate() const;

  /// Candidate indices sorted by the canonical tie-break: descending
  /// original recommender score, then ascending item id.
  std::vector<std::size_t> canonical_indices() const;
};

/// Pairwise weighted support: support(i, j) is the total ballot weight
/// strictly preferring i to j. Indifferent ballots abstain on the pair.
class MarginMatrix {
public:
  explicit MarginMatrix(std::vector<ItemId> candidates);

  double support(const ItemId& i, const ItemId& j) const;
  double support_at(std::size_t i, std::size_t j) const {
    return support_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  void add_at(std::size_t i, std::size_t j, double w) {
    support_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += w;
  }

  std::size_t size() const { return candidates_.size(); }
  const std::vector<ItemId>& candidates() const { return candidates_; }

private:
  std::vector<ItemId> candidates_;
  std::unordered_map<ItemId, std::size_t> index_;
  Eigen::MatrixXd support_;
};

}  // namespace fairsim
