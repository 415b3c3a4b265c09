#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace subdist {

// Shortest representation of each target as a sum of coins from a symmetric
// alphabet (closed under negation, 0 excluded). nullopt marks targets that
// the coins do not generate.
//
// The search runs inside the box |x_i| <= max|target| + d * max|coin|, which
// contains some shortest path for every reachable target: reordering the
// coins of an optimal sum keeps all partial sums within that box.
std::vector<std::optional<std::size_t>> shortest_coin_counts(std::span<const std::int64_t> coins,
                                                             std::span<const std::int64_t> targets);

using IntPoint = std::vector<std::int64_t>;

// d-dimensional version; throws InvalidArgument if the search box would hold
// more than `box_cap` points.
std::vector<std::optional<std::size_t>> shortest_coin_counts(std::span<const IntPoint> coins,
                                                             std::span<const IntPoint> targets,
                                                             std::size_t box_cap = 50'000'000);

}  // namespace subdist
