#include "fairsim/ballots.hpp"

#include <algorithm>

namespace fairsim {

Ballot Ballot::strict(const ScoredList& list, double weight) {
  Ballot b;
  b.weight = weight;
  b.tiers.reserve(list.size());
  std::unordered_map<ItemId, double> scores;
  for (const auto& e : list.entries()) {
    b.tiers.push_back({e.item});
    scores.emplace(e.item, e.score);
  }
  b.scores = std::move(scores);
  return b;
}

Ballot Ballot::tiered(std::vector<std::vector<ItemId>> tiers, double weight) {
  Ballot b;
  b.tiers = std::move(tiers);
  b.weight = weight;
  return b;
}

Profile Profile::build(const ScoredList& recommended, double recommender_weight) {
  Profile p;
  p.candidates = recommended.ids();
  p.recommender = Ballot::strict(recommended, recommender_weight);
  return p;
}

namespace {

void check_partition(const Ballot& ballot, const std::vector<ItemId>& candidates,
                     const std::unordered_map<ItemId, std::size_t>& index,
                     const std::string& who) {
  if (ballot.weight < 0.0) {
    throw std::invalid_argument("malformed profile: " + who + " has negative weight");
  }
  std::vector<bool> seen(candidates.size(), false);
  std::size_t covered = 0;
  for (const auto& tier : ballot.tiers) {
    for (const auto& item : tier) {
      auto it = index.find(item);
      if (it == index.end()) {
        throw std::invalid_argument("malformed profile: " + who + " ranks item '" + item +
                                    "' which is not a candidate");
      }
      if (seen[it->second]) {
        throw std::invalid_argument("malformed profile: " + who + " ranks item '" + item +
                                    "' twice");
      }
      seen[it->second] = true;
      ++covered;
    }
  }
  if (covered != candidates.size()) {
    throw std::invalid_argument("malformed profile: " + who + " covers " +
                                std::to_string(covered) + " of " +
                                std::to_string(candidates.size()) + " candidates");
  }
}

}  // namespace

void Profile::validate() const {
  std::unordered_map<ItemId, std::size_t> index;
  index.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!index.emplace(candidates[i], i).second) {
      throw std::invalid_argument("malformed profile: duplicate candidate '" + candidates[i] +
                                  "'");
    }
  }
  check_partition(recommender, candidates, index, "recommender ballot");
  if (!recommender.scores) {
    throw std::invalid_argument("malformed profile: recommender ballot has no scores");
  }
  for (const auto& c : candidates) {
    if (recommender.scores->count(c) == 0) {
      throw std::invalid_argument("malformed profile: no recommender score for candidate '" + c +
                                  "'");
    }
  }
  for (const auto& [spec, ballot] : agent_ballots) {
    check_partition(ballot, candidates, index, "ballot of agent '" + spec.name + "'");
  }
}

std::vector<std::size_t> Profile::canonical_indices() const {
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& scores = *recommender.scores;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = scores.at(candidates[a]);
    const double sb = scores.at(candidates[b]);
    if (sa != sb) return sa > sb;
    return candidates[a] < candidates[b];
  });
  return order;
}

MarginMatrix::MarginMatrix(std::vector<ItemId> candidates) : candidates_(std::move(candidates)) {
  index_.reserve(candidates_.size());
  for (std::size_t i = 0; i < candidates_.size(); ++i) index_.emplace(candidates_[i], i);
  support_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(candidates_.size()),
                                   static_cast<Eigen::Index>(candidates_.size()));
}

double MarginMatrix::support(const ItemId& i, const ItemId& j) const {
  return support_(static_cast<Eigen::Index>(index_.at(i)),
                  static_cast<Eigen::Index>(index_.at(j)));
}

}  // namespace fairsim
