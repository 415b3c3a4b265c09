#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subdist/coin_search.hpp"

using namespace subdist;

TEST_CASE("one-dimensional counts match a plain BFS") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> ncoins(1, 4);
    std::uniform_int_distribution<long> coin(1, 40);
    std::vector<long> pos;
    const int k = ncoins(rng);
    for (int i = 0; i < k; ++i) pos.push_back(coin(rng));
    std::vector<std::int64_t> coins;
    for (long c : pos) {
      coins.push_back(c);
      coins.push_back(-c);
    }
    const long bound = 300;
    const auto oracle_counts = oracle::coin_counts(pos, bound);
    std::vector<std::int64_t> targets;
    for (long t = -bound; t <= bound; t += 7) targets.push_back(t);
    const auto got = shortest_coin_counts(coins, targets);
    REQUIRE(got.size() == targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
      auto it = oracle_counts.find(targets[i]);
      if (it == oracle_counts.end()) {
        CHECK_FALSE(got[i].has_value());
      } else {
        REQUIRE(got[i].has_value());
        CHECK_MESSAGE(*got[i] == static_cast<std::size_t>(it->second), "target " << targets[i]);
      }
    }
  }
}

TEST_CASE("unreachable targets and the zero target") {
  const std::vector<std::int64_t> coins = {4, -4, 6, -6};
  const std::vector<std::int64_t> targets = {0, 2, 3, 10, -14, 1001};
  const auto got = shortest_coin_counts(coins, targets);
  CHECK(got[0] == std::optional<std::size_t>(0));
  CHECK(got[1] == std::optional<std::size_t>(2));
  CHECK_FALSE(got[2].has_value());
  CHECK(got[3] == std::optional<std::size_t>(2));
  CHECK(got[4] == std::optional<std::size_t>(3));
  CHECK_FALSE(got[5].has_value());
}

TEST_CASE("large targets use few coins") {
  const std::vector<std::int64_t> coins = {1, -1, 1000, -1000};
  const std::vector<std::int64_t> targets = {999'999, -5'000'003};
  const auto got = shortest_coin_counts(coins, targets);
  CHECK(got[0] == std::optional<std::size_t>(1000 + 1));
  CHECK(got[1] == std::optional<std::size_t>(5000 + 3));
}

TEST_CASE("two-dimensional counts match a plain BFS") {
  const std::vector<IntPoint> coins = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {2, 3}, {-2, -3}};
  std::vector<IntPoint> targets;
  for (std::int64_t x = -6; x <= 6; ++x)
    for (std::int64_t y = -6; y <= 6; ++y) targets.push_back({x, y});
  const auto got = shortest_coin_counts(coins, targets);
  std::vector<oracle::Vec> ocoins;
  for (const auto& c : coins) ocoins.push_back({static_cast<long>(c[0]), static_cast<long>(c[1])});
  const auto lengths = oracle::bfs_lengths(oracle::Vec{0, 0}, ocoins, oracle::vec_add, 14);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const oracle::Vec t{static_cast<long>(targets[i][0]), static_cast<long>(targets[i][1])};
    REQUIRE(got[i].has_value());
    CHECK(*got[i] == static_cast<std::size_t>(lengths.at(t)));
  }
}

TEST_CASE("two-dimensional sublattice leaves points unreachable") {
  const std::vector<IntPoint> coins = {{1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  const std::vector<IntPoint> targets = {{2, 0}, {1, 0}, {3, 1}};
  const auto got = shortest_coin_counts(coins, targets);
  CHECK(got[0] == std::optional<std::size_t>(2));
  CHECK_FALSE(got[1].has_value());
  CHECK(got[2] == std::optional<std::size_t>(3));
}
