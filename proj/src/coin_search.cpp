#include "subdist/coin_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "subdist/group_models.hpp"

namespace subdist {
namespace {

// "Next unvisited position" structure with path halving.
class UnvisitedSet {
 public:
  explicit UnvisitedSet(std::size_t n) : next_(n + 1) { std::iota(next_.begin(), next_.end(), 0); }

  std::size_t first_at_or_after(std::size_t i) {
    while (next_[i] != i) {
      next_[i] = next_[next_[i]];
      i = next_[i];
    }
    return i;
  }

  void erase(std::size_t i) { next_[i] = i + 1; }

 private:
  std::vector<std::size_t> next_;
};

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
};

std::vector<Interval> compress(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Interval> out;
  for (auto v : values) {
    if (!out.empty() && out.back().hi + 1 == v) {
      out.back().hi = v;
    } else {
      out.push_back(Interval{v, v});
    }
  }
  return out;
}

}  // namespace

std::vector<std::optional<std::size_t>> shortest_coin_counts(std::span<const std::int64_t> coins,
                                                             std::span<const std::int64_t> targets) {
  std::vector<std::optional<std::size_t>> out(targets.size());
  if (targets.empty()) return out;

  std::vector<std::int64_t> alphabet;
  std::int64_t max_coin = 0;
  for (auto c : coins) {
    if (c == 0) continue;
    alphabet.push_back(c);
    alphabet.push_back(-c);
    max_coin = std::max(max_coin, std::abs(c));
  }
  std::int64_t max_target = 0;
  for (auto t : targets) max_target = std::max(max_target, std::abs(t));
  const std::int64_t window = max_target + max_coin;
  const auto width = static_cast<std::size_t>(2 * window + 1);
  auto slot = [window](std::int64_t x) { return static_cast<std::size_t>(x + window); };

  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(width, kUnseen);
  UnvisitedSet unvisited(width);
  dist[slot(0)] = 0;
  unvisited.erase(slot(0));

  // Multiplicity of each target slot, so arrivals can be counted down.
  std::vector<std::uint32_t> wanted(width, 0);
  std::size_t pending = 0;
  for (auto t : targets) {
    if (t != 0) {
      ++wanted[slot(t)];
      ++pending;
    }
  }

  const auto intervals = compress(std::move(alphabet));
  std::vector<std::int64_t> frontier{0};
  for (std::size_t layer = 1; pending > 0 && !frontier.empty(); ++layer) {
    std::vector<std::int64_t> next;
    for (auto x : frontier) {
      for (const auto& iv : intervals) {
        const std::int64_t lo = std::max(x + iv.lo, -window);
        const std::int64_t hi = std::min(x + iv.hi, window);
        if (lo > hi) continue;
        for (std::size_t p = unvisited.first_at_or_after(slot(lo)); p <= slot(hi);
             p = unvisited.first_at_or_after(p)) {
          dist[p] = layer;
          unvisited.erase(p);
          pending -= wanted[p];
          next.push_back(static_cast<std::int64_t>(p) - window);
        }
      }
    }
    frontier = std::move(next);
  }

  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::size_t d = dist[slot(targets[i])];
    if (d != kUnseen) out[i] = d;
  }
  return out;
}

std::vector<std::optional<std::size_t>> shortest_coin_counts(std::span<const IntPoint> coins,
                                                             std::span<const IntPoint> targets,
                                                             std::size_t box_cap) {
  std::vector<std::optional<std::size_t>> out(targets.size());
  if (targets.empty()) return out;
  const std::size_t dim = targets.front().size();
  for (const auto& t : targets) {
    if (t.size() != dim) throw InvalidArgument("coin search: targets of mixed dimension");
  }
  if (dim == 1) {
    std::vector<std::int64_t> c1;
    std::vector<std::int64_t> t1;
    for (const auto& c : coins) c1.push_back(c.at(0));
    for (const auto& t : targets) t1.push_back(t[0]);
    return shortest_coin_counts(c1, t1);
  }

  std::vector<IntPoint> alphabet;
  std::int64_t max_coin = 0;
  for (const auto& c : coins) {
    if (c.size() != dim) throw InvalidArgument("coin search: coin of wrong dimension");
    if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; })) continue;
    IntPoint neg(c);
    for (auto& x : neg) {
      max_coin = std::max(max_coin, std::abs(x));
      x = -x;
    }
    alphabet.push_back(c);
    alphabet.push_back(std::move(neg));
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  std::int64_t max_target = 0;
  for (const auto& t : targets) {
    for (auto x : t) max_target = std::max(max_target, std::abs(x));
  }
  const std::int64_t window = max_target + static_cast<std::int64_t>(dim) * max_coin;
  const auto side = static_cast<std::size_t>(2 * window + 1);
  std::size_t volume = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (volume > box_cap / side) throw InvalidArgument("coin search box exceeds cap");
    volume *= side;
  }

  auto encode = [&](const IntPoint& p) -> std::optional<std::size_t> {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (p[i] < -window || p[i] > window) return std::nullopt;
      idx = idx * side + static_cast<std::size_t>(p[i] + window);
    }
    return idx;
  };

  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(volume, kUnseen);
  const IntPoint origin(dim, 0);
  dist[*encode(origin)] = 0;

  auto pending_count = [&] {
    std::size_t pending = 0;
    for (const auto& t : targets) pending += (dist[*encode(t)] == kUnseen) ? 1 : 0;
    return pending;
  };

  std::vector<IntPoint> frontier{origin};
  for (std::size_t layer = 1; pending_count() > 0 && !frontier.empty(); ++layer) {
    std::vector<IntPoint> next;
    for (const auto& x : frontier) {
      for (const auto& c : alphabet) {
        IntPoint y(x);
        for (std::size_t i = 0; i < dim; ++i) y[i] += c[i];
        auto idx = encode(y);
        if (idx && dist[*idx] == kUnseen) {
          dist[*idx] = layer;
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }

  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::size_t d = dist[*encode(targets[i])];
    if (d != kUnseen) out[i] = d;
  }
  return out;
}

}  // namespace subdist
