#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subdist/group_models.hpp"

namespace subdist {

// How far a reported number can be trusted.
enum class Exactness { exact, lower_bound, upper_uncertain };

std::string_view to_string(Exactness e);

inline constexpr std::size_t kDefaultNodeCap = 5'000'000;

// Thrown when a ball would exceed its node cap; carries the sphere sizes
// completed so far so callers can suggest a smaller radius.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t cap, std::vector<std::size_t> sphere_sizes);

  std::size_t cap() const { return cap_; }
  const std::vector<std::size_t>& sphere_sizes() const { return sphere_sizes_; }
  // Largest radius whose ball fit under the cap.
  std::size_t completed_radius() const { return sphere_sizes_.empty() ? 0 : sphere_sizes_.size() - 1; }

 private:
  std::size_t cap_;
  std::vector<std::size_t> sphere_sizes_;
};

// All elements of word length <= radius, deduplicated by canonical form.
// Indices are dense, spheres are contiguous index ranges, and each sphere is
// sorted by canonical key.
class BallIndex {
 public:
  static BallIndex enumerate(ModelPtr model, std::size_t radius, std::size_t node_cap = kDefaultNodeCap);

  const GroupModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return nodes_.size(); }

  const Element& element(std::size_t index) const { return *nodes_[index].element; }
  std::size_t length(std::size_t index) const { return nodes_[index].length; }
  std::optional<std::size_t> find(const Element& g) const;

  // Indices of the sphere of radius r.
  std::span<const std::size_t> sphere(std::size_t r) const { return spheres_.at(r); }
  std::vector<std::size_t> sphere_sizes() const;
  // Number of elements of length <= r.
  std::size_t cumulative_size(std::size_t r) const;

  // A geodesic word for element(index), read off the BFS parent links.
  Word word(std::size_t index) const;

 private:
  struct Node {
    const Element* element = nullptr;
    std::uint32_t length = 0;
    std::uint32_t parent = 0;
    std::uint32_t generator = 0;
  };

  BallIndex() = default;

  ModelPtr model_;
  std::size_t radius_ = 0;
  std::unordered_map<Element, std::uint32_t, ElementHash> index_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::size_t>> spheres_;
};

inline BallIndex enumerate_ball(ModelPtr model, std::size_t radius, std::size_t node_cap = kDefaultNodeCap) {
  return BallIndex::enumerate(std::move(model), radius, node_cap);
}

// Either an exact word length, or a certificate that the length exceeds `bound`.
struct LengthQuery {
  std::optional<std::size_t> exact;
  std::size_t bound = 0;

  bool known() const { return exact.has_value(); }
};

// Exact |g|_X when g lies in the ball, otherwise "|g|_X > radius".
LengthQuery word_length(const BallIndex& ball, const Element& g);

// Exact |g|_X whenever |g|_X <= 2 * radius, using midpoints on the outer
// sphere; otherwise "|g|_X > 2 * radius".
LengthQuery extended_length(const BallIndex& ball, const Element& g);

struct SubgroupPoint {
  std::size_t index = 0;   // ball index
  std::size_t length = 0;  // |h|_X
};

// H intersected with the ball (optionally cut at a smaller radius), ordered by
// (length, canonical key).
struct SubgroupPointSet {
  std::vector<SubgroupPoint> points;
  std::size_t radius = 0;

  std::size_t size() const { return points.size(); }
  bool only_identity() const { return points.size() <= 1; }
};

SubgroupPointSet subgroup_points(const BallIndex& ball, const MarkedSubgroup& sub);
SubgroupPointSet subgroup_points(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t max_length);

struct DistanceValue {
  std::size_t value = 0;
  Exactness exactness = Exactness::exact;  // lower_bound: true distance >= value
};

// Multi-source breadth-first distances d(g, targets) over the ball's Cayley
// graph, indexed like the ball. A distance is exact when every shorter path
// would have stayed inside the ball; otherwise a certified lower bound.
std::vector<DistanceValue> distance_to_subset(const BallIndex& ball, const SubgroupPointSet& targets);

}  // namespace subdist
