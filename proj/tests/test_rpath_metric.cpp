#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subdist/distortion.hpp"
#include "subdist/rpath_metric.hpp"

using namespace subdist;

namespace {

// Hop counts from points[0] where one hop moves at most r along the line.
std::vector<int> line_hops(const std::vector<long>& points, long r) {
  std::vector<int> hops(points.size(), -1);
  hops[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (hops[j] < 0 && std::labs(points[i] - points[j]) <= r) {
        hops[j] = hops[i] + 1;
        queue.push_back(j);
      }
    }
  }
  return hops;
}

}  // namespace

TEST_CASE("integer segment: nu(m, n) = ceil(n / m)") {
  auto seg = integer_segment(0, 50);
  for (std::int64_t m = 1; m <= 50; ++m) {
    for (std::int64_t n = m; n <= 50; ++n) {
      auto v = nu(seg, Rational(m), Rational(n));
      REQUIRE(v.complete());
      CHECK(v.exactness == Exactness::exact);
      CHECK(v.value == static_cast<std::size_t>((n + m - 1) / m));
    }
  }
  // Steps of 5/2 can only land on integers, so they act like steps of 2.
  CHECK(nu(seg, Rational(5, 2), Rational(10)).value == 5);
}

TEST_CASE("r-path lengths on random line spaces match a direct BFS") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coord(-60, 60);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> pts = {0};
    for (int i = 0; i < 25; ++i) pts.push_back(coord(rng));
    std::vector<std::int64_t> ipts(pts.begin(), pts.end());
    auto space = line_space(ipts, 0);
    for (long r : {1L, 3L, 7L, 15L}) {
      const auto expect = line_hops(pts, r);
      const auto got = rpath_lengths(space, Rational(r));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (expect[i] < 0) {
          CHECK_FALSE(got[i].has_value());
        } else {
          REQUIRE(got[i].has_value());
          CHECK(*got[i] == static_cast<std::size_t>(expect[i]));
        }
      }
    }
  }
}

TEST_CASE("gaps leave points unreachable and split components") {
  auto space = line_space({0, 1, 5});
  auto v = nu(space, Rational(2), Rational(10));
  CHECK(v.unreachable == std::vector<std::size_t>{2});
  CHECK_FALSE(v.complete());
  auto conn = is_r_connected(space, Rational(2));
  CHECK_FALSE(conn.connected);
  CHECK(conn.components == 2);
  CHECK(is_r_connected(space, Rational(4)).connected);
  CHECK(*space.find("5") == 2);
}

TEST_CASE("larger steps never lengthen r-paths") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> coord(-40, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> pts = {0};
    for (int i = 0; i < 30; ++i) pts.push_back(coord(rng));
    auto space = line_space(pts);
    for (std::int64_t r = 1; r < 10; ++r) {
      auto small = rpath_lengths(space, Rational(r));
      auto big = rpath_lengths(space, Rational(r + 1));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (small[i]) {
          REQUIRE(big[i].has_value());
          CHECK(*big[i] <= *small[i]);
        }
      }
    }
  }
}

TEST_CASE("metric axioms are checked") {
  CHECK_FALSE(check_metric_axioms(integer_segment(-5, 5)).has_value());
  FiniteMetricSpace bad({"a", "b", "c"}, 0, [](std::size_t i, std::size_t j) {
    if (i == j) return MetricDistance{Rational(0), true};
    if ((i == 0 && j == 2) || (i == 2 && j == 0)) return MetricDistance{Rational(10), true};
    return MetricDistance{Rational(1), true};
  });
  auto err = check_metric_axioms(bad);
  REQUIRE(err.has_value());
  CHECK(err->find("triangle") != std::string::npos);
}

TEST_CASE("induced space distances are ambient word lengths") {
  auto g = bs1p(2);
  auto ball = enumerate_ball(g, 12);
  auto sub = marked_subgroup("gen-a", g);
  auto space = induced_space(ball, *sub, 6, 6);
  CHECK(space.provenance() == Provenance::induced);
  CHECK_FALSE(check_metric_axioms(space).has_value());
  const auto points = subgroup_points(ball, *sub, 12);
  REQUIRE(points.size() == space.size());
  CHECK(ball.length(points.points[space.basepoint()].index) == 0);
  const auto lens = oracle::bs2_lengths(12);
  std::size_t inexact = 0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const long ki = sub->coordinates(ball.element(points.points[i].index))[0];
    for (std::size_t j = 0; j < space.size(); ++j) {
      const long kj = sub->coordinates(ball.element(points.points[j].index))[0];
      auto it = lens.find(oracle::Aff{0, boost::rational<long long>(kj - ki)});
      const auto& d = space.distance(i, j);
      if (it == lens.end()) {
        CHECK_FALSE(d.exact);
        CHECK(d.value == Rational(12));
        ++inexact;
      } else {
        REQUIRE(d.exact);
        CHECK(d.value == Rational(it->second));
      }
    }
  }
  CHECK(inexact > 0);
  CHECK_THROWS_AS(induced_space(ball, *sub, 7, 6), InvalidArgument);
}

TEST_CASE("nu on the induced space equals mu") {
  struct Case {
    ModelPtr g;
    std::string sub;
  };
  for (const auto& c : {Case{bs1p(2), "gen-a"}, Case{heisenberg(), "center"}, Case{free_abelian(2), "diagonal"}}) {
    auto ball = enumerate_ball(c.g, 12);
    auto sub = marked_subgroup(c.sub, c.g);
    auto space = induced_space(ball, *sub, 6, 6);
    for (std::size_t m = 1; m <= 6; ++m) {
      for (std::size_t n = m; n <= 6; ++n) {
        Witnessed expect;
        try {
          expect = mu(ball, *sub, m, n);
        } catch (const UndefinedValue&) {
          // No nontrivial steps of size m: only the basepoint is reachable.
          auto v = nu(space, Rational(static_cast<std::int64_t>(m)), Rational(static_cast<std::int64_t>(n)));
          CHECK(v.value == 0);
          continue;
        }
        auto v = nu(space, Rational(static_cast<std::int64_t>(m)), Rational(static_cast<std::int64_t>(n)));
        CHECK(v.complete());
        CHECK(v.exactness == Exactness::exact);
        CHECK_MESSAGE(v.value == expect.value, c.g->name() << "/" << c.sub << " m = " << m << ", n = " << n);
      }
    }
    CHECK_THROWS_AS(nu(space, Rational(2), Rational(7)), InvalidArgument);
  }
}
