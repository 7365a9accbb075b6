#include <doctest.h>

#include "fairsim/ballots.hpp"

using namespace fairsim;

namespace {

ScoredList abc_list() {
  return ScoredList::ranked({{"a", 3.0}, {"b", 2.0}, {"c", 1.0}});
}

}  // namespace

TEST_CASE("strict ballots put one item per tier in rank order") {
  const auto ballot = Ballot::strict(abc_list(), 2.0);
  CHECK(ballot.weight == 2.0);
  CHECK(ballot.tiers == std::vector<std::vector<ItemId>>{{"a"}, {"b"}, {"c"}});
  REQUIRE(ballot.scores.has_value());
  CHECK(ballot.scores->at("b") == 2.0);
}

TEST_CASE("tiered ballots carry their weak order") {
  const auto ballot = Ballot::tiered({{"p"}, {"x", "y"}}, 1.0);
  CHECK(ballot.tiers.size() == 2);
  CHECK_FALSE(ballot.scores.has_value());
}

TEST_CASE("profiles take their candidates from the recommender list") {
  const auto profile = Profile::build(abc_list(), 1.0);
  CHECK(profile.candidates == std::vector<ItemId>{"a", "b", "c"});
  CHECK(profile.recommender.weight == 1.0);
  CHECK_NOTHROW(profile.validate());
}

TEST_CASE("profiles reject ballots ranking non-candidates") {
  auto profile = Profile::build(abc_list(), 1.0);
  AgentSpec spec;
  spec.name = "a1";
  spec.protected_feature = "f";
  profile.agent_ballots.emplace_back(spec, Ballot::tiered({{"a", "zz"}, {"b", "c"}}, 1.0));
  CHECK_THROWS_WITH_AS(profile.validate(),
                       "malformed profile: ballot of agent 'a1' ranks item 'zz' which is not a "
                       "candidate",
                       std::invalid_argument);
}

TEST_CASE("profiles reject ballots that drop or repeat candidates") {
  auto incomplete = Profile::build(abc_list(), 1.0);
  AgentSpec spec;
  spec.name = "a1";
  spec.protected_feature = "f";
  incomplete.agent_ballots.emplace_back(spec, Ballot::tiered({{"a"}, {"b"}}, 1.0));
  CHECK_THROWS_AS(incomplete.validate(), std::invalid_argument);

  auto repeated = Profile::build(abc_list(), 1.0);
  repeated.agent_ballots.emplace_back(spec, Ballot::tiered({{"a", "b"}, {"b", "c"}}, 1.0));
  CHECK_THROWS_AS(repeated.validate(), std::invalid_argument);
}

TEST_CASE("canonical order is recommender score descending then id ascending") {
  auto profile = Profile::build(ScoredList::ranked({{"d", 1.0}, {"b", 2.0}, {"c", 2.0}}), 1.0);
  const auto order = profile.canonical_indices();
  std::vector<ItemId> ids;
  for (const auto i : order) ids.push_back(profile.candidates[i]);
  CHECK(ids == std::vector<ItemId>{"b", "c", "d"});
}

TEST_CASE("margin matrices start empty and accumulate support") {
  MarginMatrix margins({"a", "b"});
  CHECK(margins.support("a", "b") == 0.0);
  CHECK(margins.support("a", "a") == 0.0);
  margins.add_at(0, 1, 2.0);
  CHECK(margins.support("a", "b") == 2.0);
  CHECK(margins.support_at(0, 1) == 2.0);
  CHECK(margins.support("b", "a") == 0.0);
}
