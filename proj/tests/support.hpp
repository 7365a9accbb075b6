#pragma once

// Reference tallies implemented straight from the rule definitions, kept
// independent of the library's aggregation code, plus a random-profile
// generator and a scratch-directory helper shared across test files.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fairsim/ballots.hpp"
#include "fairsim/rng.hpp"
#include "fairsim/types.hpp"

namespace testsupport {

// Positional sums: a tier occupying positions p .. p+t-1 of n gives each
// member the average of the scores (n-1-p) down to (n-1-p-t+1).
inline std::map<std::string, double> borda_oracle(const fairsim::Profile& profile) {
  const double n = static_cast<double>(profile.candidates.size());
  std::map<std::string, double> totals;
  for (const auto& id : profile.candidates) totals[id] = 0.0;
  auto add = [&](const fairsim::Ballot& ballot) {
    std::size_t pos = 0;
    for (const auto& tier : ballot.tiers) {
      double span_sum = 0.0;
      for (std::size_t offset = 0; offset < tier.size(); ++offset) {
        span_sum += n - 1.0 - static_cast<double>(pos + offset);
      }
      const double each = span_sum / static_cast<double>(tier.size());
      for (const auto& id : tier) totals[id] += ballot.weight * each;
      pos += tier.size();
    }
  };
  add(profile.recommender);
  for (const auto& [spec, ballot] : profile.agent_ballots) add(ballot);
  return totals;
}

// Win-loss tally: per unordered pair, the heavier side gets a point, an
// even split gets half a point each.
inline std::map<std::string, double> copeland_oracle(const fairsim::Profile& profile) {
  const auto& ids = profile.candidates;
  std::map<std::string, double> points;
  for (const auto& id : ids) points[id] = 0.0;

  auto tier_index = [](const fairsim::Ballot& ballot) {
    std::map<std::string, std::size_t> index;
    for (std::size_t t = 0; t < ballot.tiers.size(); ++t) {
      for (const auto& id : ballot.tiers[t]) index[id] = t;
    }
    return index;
  };
  std::vector<std::pair<double, std::map<std::string, std::size_t>>> ballots;
  ballots.emplace_back(profile.recommender.weight, tier_index(profile.recommender));
  for (const auto& [spec, ballot] : profile.agent_ballots) {
    ballots.emplace_back(ballot.weight, tier_index(ballot));
  }

  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      double for_i = 0.0;
      double for_j = 0.0;
      for (const auto& [weight, tiers] : ballots) {
        const std::size_t ti = tiers.at(ids[i]);
        const std::size_t tj = tiers.at(ids[j]);
        if (ti < tj) for_i += weight;
        if (tj < ti) for_j += weight;
      }
      if (for_i > for_j) {
        points[ids[i]] += 1.0;
      } else if (for_j > for_i) {
        points[ids[j]] += 1.0;
      } else {
        points[ids[i]] += 0.5;
        points[ids[j]] += 0.5;
      }
    }
  }
  return points;
}

// Expected output order for a score table: score descending, then original
// recommender score descending, then id ascending.
inline std::vector<std::string> rank_oracle(const std::map<std::string, double>& scores,
                                            const fairsim::Profile& profile) {
  std::vector<std::string> ids = profile.candidates;
  const auto& rec = *profile.recommender.scores;
  std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
    if (scores.at(a) != scores.at(b)) return scores.at(a) > scores.at(b);
    if (rec.at(a) != rec.at(b)) return rec.at(a) > rec.at(b);
    return a < b;
  });
  return ids;
}

// Random profile: 1..max_candidates candidates with small integer
// recommender scores (ties likely), up to max_agents random weak-order
// ballots, all weights in {1, 2, 3}.
inline fairsim::Profile random_profile(fairsim::Rng& rng, std::size_t max_candidates = 5,
                                       std::size_t max_agents = 3) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_below(max_candidates));
  std::vector<fairsim::ScoredEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back(
        {"c" + std::to_string(i + 1), static_cast<double>(rng.uniform_below(10))});
  }
  const double rec_weight = static_cast<double>(1 + rng.uniform_below(3));
  auto profile =
      fairsim::Profile::build(fairsim::ScoredList::ranked(std::move(entries)), rec_weight);

  const std::size_t n_agents = static_cast<std::size_t>(rng.uniform_below(max_agents + 1));
  for (std::size_t a = 0; a < n_agents; ++a) {
    std::vector<std::string> ids = profile.candidates;
    rng.shuffle(ids);
    std::vector<std::vector<fairsim::ItemId>> tiers;
    for (auto& id : ids) {
      if (tiers.empty() || rng.uniform_below(2) == 0) {
        tiers.push_back({std::move(id)});
      } else {
        tiers.back().push_back(std::move(id));
      }
    }
    fairsim::AgentSpec spec;
    spec.name = "agent" + std::to_string(a + 1);
    spec.protected_feature = "f";
    const double weight = static_cast<double>(1 + rng.uniform_below(3));
    profile.agent_ballots.emplace_back(spec, fairsim::Ballot::tiered(std::move(tiers), weight));
  }
  return profile;
}

// Scratch directory removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 1000; ++attempt) {
      auto candidate = base / (tag + "_" + std::to_string(std::rand()) +
                               "_" + std::to_string(attempt));
      std::error_code ec;
      if (std::filesystem::create_directories(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create a scratch directory for " + tag);
  }

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

  std::string write_file(const std::string& name, const std::string& content) const {
    const auto file = path_ / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file.string();
  }

private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

}  // namespace testsupport
