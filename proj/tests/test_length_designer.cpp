#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subdist/length_designer.hpp"

using namespace subdist;

namespace {

// Abstract mu straight from the definition, on a window of the line.
int oracle_abstract_mu(const PrescribedLengthFunction& ell, std::uint64_t m, std::uint64_t n, long window) {
  std::vector<long> coins;
  long top = 0;
  for (long z = 1; z <= window; ++z) {
    if (ell(z) <= m) coins.push_back(z);
    if (ell(z) <= n) top = z;
  }
  REQUIRE(top < window);
  auto counts = oracle::coin_counts(coins, top);
  int best = 0;
  for (long z = -top; z <= top; ++z) best = std::max(best, counts.at(z));
  return best;
}

}  // namespace

TEST_CASE("ceil_root agrees with brute force") {
  for (unsigned k = 1; k <= 5; ++k) {
    for (std::uint64_t z = 0; z <= 5000; ++z) {
      std::uint64_t m = 0;
      while (std::pow(static_cast<double>(m), k) < static_cast<double>(z)) ++m;
      CHECK(ceil_root(z, k) == m);
    }
  }
  CHECK(ceil_root(std::uint64_t{1} << 62, 2) == std::uint64_t{1} << 31);
  CHECK(ceil_root((std::uint64_t{1} << 62) + 1, 2) == (std::uint64_t{1} << 31) + 1);
  CHECK(ceil_root(18446744073709551615ULL, 3) == 2642246);
}

TEST_CASE("source functions") {
  auto s = source_function("sqrt");
  CHECK(s.eval(1) == 1);
  CHECK(s.eval(10) == 4);
  CHECK(s.eval(16) == 4);
  CHECK(source_function("power:3").eval(27) == 3);
  CHECK(source_function("power:3").eval(28) == 4);
  auto g = source_function("log-scaled");
  std::uint64_t prev = 0;
  for (std::uint64_t r = 1; r <= 2000; ++r) {
    CHECK(g.eval(r) >= prev);
    CHECK(g.eval(r) >= 1);
    CHECK(g.eval(r) <= r);
    prev = g.eval(r);
  }
  CHECK_THROWS_AS(source_function("cube"), InvalidArgument);
}

TEST_CASE("sqrt construction: breakpoints and plateaus") {
  auto ell = build_ell(source_function("sqrt"), 4, 10'000);
  CHECK(ell.breakpoints() == std::vector<std::uint64_t>{1, 3, 14, 150});
  REQUIRE(ell.plateaus().size() == 4);
  const std::vector<std::array<std::uint64_t, 3>> expected = {{1, 1, 1}, {3, 6, 3}, {14, 42, 7}, {150, 600, 25}};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = ell.plateaus()[i];
    CHECK(p.k == i + 1);
    CHECK(p.lo == expected[i][0]);
    CHECK(p.hi == expected[i][1]);
    CHECK(p.value == expected[i][2]);
    for (std::uint64_t s = p.lo; s <= p.hi; ++s) CHECK(ell(static_cast<std::int64_t>(s)) == p.value);
  }
  CHECK(ell(0) == 0);
  CHECK(ell(-14) == ell(14));
  // Past the last plateau ell(s) = ceil(s / 4!).
  CHECK(ell(601) == 26);
  CHECK(ell(10'000) == 417);
  CHECK_THROWS_AS(ell(10'001), InvalidArgument);
}

TEST_CASE("sqrt construction is certified") {
  auto f = source_function("sqrt");
  auto ell = build_ell(f, 4, 10'000);
  auto cert = certify(ell, &f, 10'000);
  CHECK(cert.monotone);
  CHECK(cert.subadditive);
  CHECK(cert.dominates);
  CHECK(cert.plateaus_hold);
  CHECK(cert.plateau_count == 4);
  CHECK(cert.ok());
}

TEST_CASE("a fifth plateau does not fit on a grid of 10^4") {
  CHECK_THROWS_AS(build_ell(source_function("sqrt"), 5, 10'000), InvalidArgument);
}

TEST_CASE("build_ell rejects sources outside 1 <= f(r) <= r") {
  SourceFunction too_big{"big", [](std::uint64_t r) { return r + 1; }};
  CHECK_THROWS_AS(build_ell(too_big, 2, 100), InvalidArgument);
  SourceFunction decreasing{"dec", [](std::uint64_t r) { return r == 50 ? 1 : (r + 1) / 2; }};
  CHECK_THROWS_AS(build_ell(decreasing, 2, 100), InvalidArgument);
}

TEST_CASE("certify finds a broken length function") {
  PrescribedLengthFunction bad("bad", [](std::uint64_t z) { return z == 7 ? 9 : (z + 1) / 2; }, 100);
  auto cert = certify(bad, nullptr, 100);
  CHECK_FALSE(cert.ok());
  CHECK_FALSE(cert.monotone);
  CHECK_FALSE(cert.subadditive);
  auto f = source_function("sqrt");
  PrescribedLengthFunction low("low", [](std::uint64_t z) { return z == 0 ? 0 : 1; }, 100);
  auto c2 = certify(low, &f, 100);
  CHECK_FALSE(c2.dominates);
  CHECK(c2.domination_violation == std::optional<std::uint64_t>(2));
}

TEST_CASE("power lengths are subadditive on random pairs") {
  std::mt19937_64 rng(17);
  for (unsigned k = 2; k <= 4; ++k) {
    auto ell = power_length(k);
    std::uniform_int_distribution<std::int64_t> pick(-1'000'000'000, 1'000'000'000);
    for (int t = 0; t < 10'000; ++t) {
      const auto a = pick(rng);
      const auto b = pick(rng);
      CHECK(ell(a + b) <= ell(a) + ell(b));
    }
    CHECK(certify(ell, nullptr, 20'000).ok());
  }
}

TEST_CASE("abstract line with ell = ceil(sqrt |z|)") {
  AbstractDistortedLine line(power_length(2));
  for (std::uint64_t m = 1; m <= 100; ++m) {
    CHECK(line.delta(m) == m * m);
    CHECK(line.nabla(m) == m * m + 1);
  }
  for (std::uint64_t i = 1; i <= 6; ++i) {
    CHECK(line.mu(i, 4 * i) == static_cast<std::uint64_t>(oracle_abstract_mu(line.ell(), i, 4 * i, 1200)));
  }
  std::uint64_t worst = 0;
  for (std::uint64_t i = 1; i <= 50; ++i) worst = std::max(worst, line.mu(i, 4 * i));
  CHECK(worst <= 16);
}

TEST_CASE("abstract mu matches the coin oracle on the built function") {
  auto ell = build_ell(source_function("sqrt"), 4, 10'000);
  AbstractDistortedLine line(ell);
  for (std::uint64_t m = 1; m <= 8; ++m) {
    for (std::uint64_t n = m; n <= 12; ++n) {
      CHECK_MESSAGE(line.mu(m, n) == static_cast<std::uint64_t>(oracle_abstract_mu(ell, m, n, 2000)),
                    "m = " << m << ", n = " << n);
    }
  }
}

TEST_CASE("built function: diagonal values just below each plateau") {
  auto ell = build_ell(source_function("sqrt"), 4, 10'000);
  AbstractDistortedLine line(ell);
  const std::vector<std::uint64_t> expected = {3, 4, 5};
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto lp = ell(static_cast<std::int64_t>(ell.breakpoints()[k - 1]));
    const auto v = line.mu(lp - 1, lp);
    CHECK(v == expected[k - 2]);
    CHECK(v >= k);
  }
}

TEST_CASE("abstract sandwich") {
  AbstractDistortedLine line(build_ell(source_function("sqrt"), 4, 10'000));
  auto table = abstract_table(line, 20);
  std::vector<std::size_t> grid;
  for (std::size_t i = 1; i <= 20; ++i) grid.push_back(i);
  auto mt = abstract_mu_table(line, grid, grid);
  auto report = check_sandwich(table, mt);
  CHECK(report.holds());
  CHECK(report.checked == 400);
}
