#include "fairsim/choice.hpp"

#include <algorithm>
#include <cstdint>

namespace fairsim {

namespace {

// Tier index per candidate, aligned with profile.candidates.
std::vector<std::size_t> tier_ranks(const Ballot& ballot,
                                    const std::unordered_map<ItemId, std::size_t>& index) {
  std::vector<std::size_t> ranks(index.size(), 0);
  for (std::size_t t = 0; t < ballot.tiers.size(); ++t) {
    for (const auto& item : ballot.tiers[t]) ranks[index.at(item)] = t;
  }
  return ranks;
}

std::unordered_map<ItemId, std::size_t> candidate_index(const Profile& profile) {
  std::unordered_map<ItemId, std::size_t> index;
  index.reserve(profile.candidates.size());
  for (std::size_t i = 0; i < profile.candidates.size(); ++i) {
    index.emplace(profile.candidates[i], i);
  }
  return index;
}

// Inverse of canonical_indices: canon_pos[i] is candidate i's canonical rank.
std::vector<std::size_t> canonical_positions(const Profile& profile) {
  const auto order = profile.canonical_indices();
  std::vector<std::size_t> pos(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = r;
  return pos;
}

// Candidates sorted by (value descending, canonical tie-break).
ScoredList rank_by_value(const Profile& profile, const Eigen::VectorXd& value) {
  const auto canon = canonical_positions(profile);
  std::vector<std::size_t> order(profile.candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = value[static_cast<Eigen::Index>(a)];
    const double vb = value[static_cast<Eigen::Index>(b)];
    if (va != vb) return va > vb;
    return canon[a] < canon[b];
  });
  std::vector<ScoredEntry> entries;
  entries.reserve(order.size());
  for (std::size_t i : order) {
    entries.push_back({profile.candidates[i], value[static_cast<Eigen::Index>(i)]});
  }
  return ScoredList::from_ordered(std::move(entries));
}

// Fixed-width bitset over candidate indices for reachability tracking.
class BitRows {
public:
  BitRows(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

  bool test(std::size_t row, std::size_t bit) const {
    return (rows_[row * words_ + bit / 64] >> (bit % 64)) & 1u;
  }
  void set(std::size_t row, std::size_t bit) {
    rows_[row * words_ + bit / 64] |= std::uint64_t{1} << (bit % 64);
  }
  void merge(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) rows_[dst * words_ + w] |= rows_[src * words_ + w];
  }

private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

}  // namespace

MarginMatrix pairwise_support(const Profile& profile) {
  profile.validate();
  const auto index = candidate_index(profile);
  const std::size_t n = profile.candidates.size();
  MarginMatrix m(profile.candidates);

  auto tally = [&](const Ballot& ballot) {
    if (ballot.weight == 0.0) return;
    const auto ranks = tier_ranks(ballot, index);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (ranks[i] < ranks[j]) m.add_at(i, j, ballot.weight);
      }
    }
  };
  tally(profile.recommender);
  for (const auto& [spec, ballot] : profile.agent_ballots) tally(ballot);
  return m;
}

ScoredList aggregate_rescoring(const ScoredList& recommended, const AllocationResult& allocation,
                               const std::vector<AgentSpec>& agents, const FeatureFlags& flags) {
  std::vector<ScoredEntry> rescored;
  rescored.reserve(recommended.size());
  for (const auto& e : recommended.entries()) {
    double score = e.score;
    for (const auto& agent : agents) {
      const double w = allocation.weight_of(agent.name);
      if (w > 0.0 && flags.is_protected(agent.protected_feature, e.item)) {
        score += w * agent.delta;
      }
    }
    rescored.push_back({e.item, score});
  }
  // Canonical tie-break: original score descending, then item id ascending.
  // The input list is already in that order, so a stable sort suffices.
  std::stable_sort(rescored.begin(), rescored.end(),
                   [](const ScoredEntry& a, const ScoredEntry& b) { return a.score > b.score; });
  return ScoredList::from_ordered(std::move(rescored));
}

ScoredList aggregate_borda(const Profile& profile) {
  profile.validate();
  const auto index = candidate_index(profile);
  const std::size_t n = profile.candidates.size();
  Eigen::VectorXd totals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));

  auto tally = [&](const Ballot& ballot) {
    std::size_t pos = 0;
    for (const auto& tier : ballot.tiers) {
      // Mean of the positional scores (n-1 ... 0) spanned by this tier.
      const double mean =
          static_cast<double>(n - 1 - pos) - static_cast<double>(tier.size() - 1) / 2.0;
      for (const auto& item : tier) {
        totals[static_cast<Eigen::Index>(index.at(item))] += ballot.weight * mean;
      }
      pos += tier.size();
    }
  };
  tally(profile.recommender);
  for (const auto& [spec, ballot] : profile.agent_ballots) tally(ballot);
  return rank_by_value(profile, totals);
}

ScoredList aggregate_copeland(const Profile& profile) {
  const MarginMatrix m = pairwise_support(profile);
  const std::size_t n = m.size();
  Eigen::VectorXd points = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sij = m.support_at(i, j);
      const double sji = m.support_at(j, i);
      if (sij > sji) {
        points[static_cast<Eigen::Index>(i)] += 1.0;
      } else if (sji > sij) {
        points[static_cast<Eigen::Index>(j)] += 1.0;
      } else {
        points[static_cast<Eigen::Index>(i)] += 0.5;
        points[static_cast<Eigen::Index>(j)] += 0.5;
      }
    }
  }
  return rank_by_value(profile, points);
}

RankedPairsOutcome ranked_pairs_trace(const Profile& profile, Rng& rng) {
  const MarginMatrix m = pairwise_support(profile);
  const std::size_t n = m.size();

  struct Pair {
    std::size_t winner;
    std::size_t loser;
    double margin;
  };
  double max_support = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) max_support = std::max(max_support, m.support_at(i, j));
    }
  }
  // Margins are compared with a tolerance proportional to the vote mass so
  // that rescaling every ballot weight leaves pair selection, run grouping
  // and therefore rng consumption unchanged.
  const double tol = 1e-9 * max_support;

  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double margin = m.support_at(i, j) - m.support_at(j, i);
      // Contested dead heats enter in both directions; the shuffle below
      // picks which one locks first and the cycle check discards the
      // other. Pairs nobody voted on stay unconstrained.
      if (margin > tol || (margin >= -tol && m.support_at(i, j) > tol)) {
        pairs.push_back({i, j, margin});
      }
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.margin > b.margin; });
  // Permute each equal-margin run with the rng, from a canonical order so
  // the outcome depends only on run membership and the seed.
  for (std::size_t lo = 0; lo < pairs.size();) {
    std::size_t hi = lo + 1;
    while (hi < pairs.size() && pairs[hi].margin >= pairs[lo].margin - tol) ++hi;
    if (hi - lo > 1) {
      std::vector<Pair> run(pairs.begin() + lo, pairs.begin() + hi);
      std::sort(run.begin(), run.end(), [](const Pair& a, const Pair& b) {
        return a.winner != b.winner ? a.winner < b.winner : a.loser < b.loser;
      });
      rng.shuffle(run);
      std::copy(run.begin(), run.end(), pairs.begin() + lo);
    }
    lo = hi;
  }

  // Lock pairs unless they would close a cycle; reach rows give incremental
  // transitive closure so the check is a single bit test.
  BitRows reach(n);
  std::vector<std::vector<std::size_t>> locked_adj(n);
  RankedPairsOutcome out;
  for (const auto& p : pairs) {
    if (reach.test(p.loser, p.winner)) continue;  // would induce a cycle
    locked_adj[p.winner].push_back(p.loser);
    out.locked.emplace_back(m.candidates()[p.winner], m.candidates()[p.loser]);
    for (std::size_t v = 0; v < n; ++v) {
      if (v == p.winner || reach.test(v, p.winner)) {
        reach.set(v, p.loser);
        reach.merge(v, p.loser);
      }
    }
  }

  // Topological order; among available sources pick the canonical-first one.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : locked_adj[i]) ++indegree[j];
  }
  const auto canon = canonical_positions(profile);
  std::vector<bool> placed(n, false);
  std::vector<ScoredEntry> entries;
  entries.reserve(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || indegree[i] > 0) continue;
      if (best == n || canon[i] < canon[best]) best = i;
    }
    placed[best] = true;
    for (std::size_t j : locked_adj[best]) --indegree[j];
    entries.push_back({profile.candidates[best], static_cast<double>(n - rank)});
  }
  out.list = ScoredList::from_ordered(std::move(entries));
  return out;
}

ScoredList aggregate_ranked_pairs(const Profile& profile, Rng& rng) {
  return ranked_pairs_trace(profile, rng).list;
}

}  // namespace fairsim
