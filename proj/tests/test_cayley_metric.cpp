#include "doctest.h"
#include "oracles.hpp"
#include "subdist/cayley_metric.hpp"

using namespace subdist;

namespace {

Element h3(const oracle::H3& t) { return Element(HeisenbergMatrix{std::get<0>(t), std::get<1>(t), std::get<2>(t)}); }

}  // namespace

TEST_CASE("sphere sizes match an independent BFS") {
  // Frozen from oracle::bfs_lengths on raw tuples.
  const std::vector<std::size_t> heis = {1, 7, 29, 83, 189, 379, 697, 1199, 1953};
  const std::vector<std::size_t> bs2 = {1, 5, 17, 43, 93, 191, 375, 711, 1317};
  CHECK(oracle::sphere_sizes(oracle::heisenberg_lengths(8), 8) ==
        std::vector<std::size_t>{1, 6, 22, 54, 106, 190, 318, 502, 754});
  auto hb = enumerate_ball(heisenberg(), 8);
  auto bb = enumerate_ball(bs1p(2), 8);
  std::vector<std::size_t> hc, bc;
  for (std::size_t r = 0; r <= 8; ++r) {
    hc.push_back(hb.cumulative_size(r));
    bc.push_back(bb.cumulative_size(r));
  }
  CHECK(hc == heis);
  CHECK(bc == bs2);
  CHECK(oracle::sphere_sizes(oracle::bs2_lengths(8), 8) == bb.sphere_sizes());
}

TEST_CASE("heisenberg lengths agree element by element with the oracle") {
  auto ball = enumerate_ball(heisenberg(), 7);
  const auto lengths = oracle::heisenberg_lengths(7);
  CHECK(lengths.size() == ball.size());
  for (const auto& [t, d] : lengths) {
    auto idx = ball.find(h3(t));
    REQUIRE(idx.has_value());
    CHECK(ball.length(*idx) == static_cast<std::size_t>(d));
  }
}

TEST_CASE("trivial balls") {
  auto z1 = enumerate_ball(free_abelian(1), 5);
  CHECK(z1.size() == 11);
  CHECK(enumerate_ball(free_abelian(2), 3).sphere_sizes() == std::vector<std::size_t>{1, 4, 8, 12});
  CHECK(enumerate_ball(free_group(2), 3).sphere_sizes() == std::vector<std::size_t>{1, 4, 12, 36});
  CHECK(enumerate_ball(heisenberg(), 0).size() == 1);
}

TEST_CASE("parent words are geodesic and evaluate to their element") {
  for (const auto& g : {heisenberg(), bs1p(2), free_group(2), parse_group("product(free-abelian:1, bs1p:2)")}) {
    auto ball = enumerate_ball(g, 5);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const Word w = ball.word(i);
      CHECK(w.size() == ball.length(i));
      CHECK(g->evaluate(w) == ball.element(i));
    }
  }
}

TEST_CASE("word length is symmetric and satisfies the triangle inequality") {
  auto g = bs1p(2);
  auto ball = enumerate_ball(g, 8);
  for (std::size_t i = 0; i < ball.cumulative_size(4); ++i) {
    const auto& x = ball.element(i);
    CHECK(word_length(ball, g->inverse(x)).exact == ball.length(i));
    for (std::size_t j = 0; j < ball.cumulative_size(4); j += 7) {
      const auto xy = word_length(ball, g->multiply(x, ball.element(j)));
      REQUIRE(xy.known());
      CHECK(*xy.exact <= ball.length(i) + ball.length(j));
    }
  }
}

TEST_CASE("spheres are contiguous and sorted by canonical key") {
  auto ball = enumerate_ball(heisenberg(), 5);
  std::size_t next = 0;
  for (std::size_t r = 0; r <= 5; ++r) {
    auto s = ball.sphere(r);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s[k] == next++);
      if (k > 0) CHECK(ball.element(s[k - 1]) < ball.element(s[k]));
    }
  }
}

TEST_CASE("node cap raises CapExceeded with the sizes reached") {
  try {
    enumerate_ball(heisenberg(), 12, 1000);
    FAIL("expected CapExceeded");
  } catch (const CapExceeded& e) {
    CHECK(e.cap() == 1000);
    CHECK(e.completed_radius() == 6);
    CHECK(std::string(e.what()).find("largest radius that fits is 6") != std::string::npos);
  }
}

TEST_CASE("extended length doubles the reach of a ball") {
  auto g = heisenberg();
  auto small = enumerate_ball(g, 8);
  auto big = enumerate_ball(g, 16);
  for (std::size_t i = 0; i < big.size(); i += 97) {
    auto q = extended_length(small, big.element(i));
    REQUIRE(q.known());
    CHECK(*q.exact == big.length(i));
  }
  // z^100 has length 20 > 16.
  auto far = extended_length(small, g->power(g->generator("z"), 100));
  CHECK_FALSE(far.known());
  CHECK(far.bound == 16);
}

TEST_CASE("heisenberg |z^m| agrees with the oracle ball") {
  const auto lengths = oracle::heisenberg_lengths(16);
  auto g = heisenberg();
  auto ball = enumerate_ball(g, 8);
  std::size_t checked = 0;
  for (long m = 0; m <= 80; ++m) {
    auto it = lengths.find(oracle::H3{0, m, 0});
    auto q = extended_length(ball, g->power(g->generator("z"), m));
    if (it == lengths.end()) {
      CHECK_FALSE(q.known());
      continue;
    }
    REQUIRE(q.known());
    CHECK_MESSAGE(*q.exact == static_cast<std::size_t>(it->second), "m = " << m);
    ++checked;
  }
  CHECK(checked == 17);
  // Frozen from a radius-32 oracle run.
  auto big = enumerate_ball(g, 16);
  CHECK(extended_length(big, g->power(g->generator("z"), 64)).exact == std::optional<std::size_t>(32));
}

TEST_CASE("bs1p:2 |a^k| for k = 0..64 (oracle-frozen)") {
  const std::vector<std::size_t> expected = {0,  1,  2,  3,  4,  5,  5,  6,  6,  7,  7,  8,  7,  8,  8,  9,  8,
                                             9,  9,  10, 9,  10, 10, 10, 9,  10, 10, 11, 10, 11, 11, 11, 10, 11,
                                             11, 12, 11, 12, 12, 12, 11, 12, 12, 13, 12, 13, 12, 12, 11, 12, 12,
                                             13, 12, 13, 13, 13, 12, 13, 13, 14, 13, 14, 13, 13, 12};
  auto g = bs1p(2);
  auto ball = enumerate_ball(g, 8);
  const auto lengths = oracle::bs2_lengths(14);
  for (std::size_t k = 0; k < expected.size(); ++k) {
    auto q = extended_length(ball, g->power(g->generator("a"), static_cast<std::int64_t>(k)));
    REQUIRE(q.known());
    CHECK_MESSAGE(*q.exact == expected[k], "k = " << k);
    const oracle::Aff ak{0, boost::rational<long long>(static_cast<long long>(k))};
    CHECK(lengths.at(ak) == static_cast<int>(expected[k]));
  }
}

TEST_CASE("subgroup points and distance to a subset") {
  auto g = free_abelian(2);
  auto ball = enumerate_ball(g, 6);
  auto axis = marked_subgroup("gen-a", g);
  auto pts = subgroup_points(ball, *axis);
  CHECK(pts.size() == 13);
  CHECK(subgroup_points(ball, *axis, 2).size() == 5);
  auto dist = distance_to_subset(ball, pts);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto y = std::abs(ball.element(i).as<IntVector>().coords[1]);
    // Exact values match |y|; flagged ones are honest lower bounds.
    if (dist[i].exactness == Exactness::exact) {
      CHECK(dist[i].value == static_cast<std::size_t>(y));
    } else {
      CHECK(dist[i].value <= static_cast<std::size_t>(y));
    }
  }
}
