#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fairsim/rng.hpp"

using namespace fairsim;

TEST_CASE("identical seeds replay identical streams") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 200; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived stream seeds decouple") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_below respects its bound") {
  Rng rng(5);
  for (std::uint64_t bound : {1ULL, 2ULL, 7ULL, 17ULL}) {
    for (int i = 0; i < 2000; ++i) CHECK(rng.uniform_below(bound) < bound);
  }
  CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("normal sampling matches its parameters statistically") {
  Rng rng(11);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(0.5, 0.06);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean - 0.5) < 0.002);
  CHECK(std::abs(stddev - 0.06) < 0.005);
}

TEST_CASE("degenerate normals collapse to the mean") {
  Rng rng(1);
  CHECK(rng.normal(0.3, 0.0) == 0.3);
  CHECK(rng.normal(-2.0, 0.0) == -2.0);
}

TEST_CASE("bernoulli edge probabilities are certain") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}

TEST_CASE("shuffle is a seed-stable permutation") {
  std::vector<int> values(10);
  for (int i = 0; i < 10; ++i) values[i] = i;

  std::vector<int> first = values;
  Rng a(21);
  a.shuffle(first);
  std::vector<int> second = values;
  Rng b(21);
  b.shuffle(second);
  CHECK(first == second);

  std::vector<int> sorted = first;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == values);
}

TEST_CASE("sample_indices draws distinct in-range indices") {
  Rng rng(33);
  const auto picks = rng.sample_indices(30, 10);
  CHECK(picks.size() == 10);
  std::set<std::size_t> unique(picks.begin(), picks.end());
  CHECK(unique.size() == 10);
  for (const auto i : picks) CHECK(i < 30);

  const auto all = rng.sample_indices(6, 6);
  std::set<std::size_t> cover(all.begin(), all.end());
  CHECK(cover.size() == 6);
}
