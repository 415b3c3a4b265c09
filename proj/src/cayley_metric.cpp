#include "subdist/cayley_metric.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace subdist {

std::string_view to_string(Exactness e) {
  switch (e) {
    case Exactness::exact:
      return "exact";
    case Exactness::lower_bound:
      return "lower-bound";
    case Exactness::upper_uncertain:
      return "upper-uncertain";
  }
  return "unknown";
}

namespace {

std::string cap_message(std::size_t cap, const std::vector<std::size_t>& spheres) {
  std::string msg = "ball enumeration exceeded node cap " + std::to_string(cap) + "; sphere sizes so far:";
  for (auto s : spheres) msg += " " + std::to_string(s);
  if (!spheres.empty()) {
    msg += "; largest radius that fits is " + std::to_string(spheres.size() - 1);
  }
  return msg;
}

}  // namespace

CapExceeded::CapExceeded(std::size_t cap, std::vector<std::size_t> sphere_sizes)
    : std::runtime_error(cap_message(cap, sphere_sizes)), cap_(cap), sphere_sizes_(std::move(sphere_sizes)) {}

BallIndex BallIndex::enumerate(ModelPtr model, std::size_t radius, std::size_t node_cap) {
  if (!model) throw InvalidArgument("enumerate_ball: null model");
  if (node_cap == 0) throw InvalidArgument("enumerate_ball: node_cap must be positive");

  BallIndex ball;
  ball.model_ = std::move(model);
  ball.radius_ = radius;
  const auto& gens = ball.model_->generators();

  auto [root, inserted] = ball.index_.emplace(ball.model_->identity(), 0);
  (void)inserted;
  ball.nodes_.push_back(Node{&root->first, 0, 0, 0});
  ball.spheres_.push_back({0});

  struct Pending {
    const Element* element;
    std::uint32_t parent;
    std::uint32_t generator;
  };

  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<Pending> found;
    for (std::size_t idx : ball.spheres_[r - 1]) {
      const Element& g = *ball.nodes_[idx].element;
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        Element h = ball.model_->multiply(g, gens[gi].element);
        auto [it, fresh] = ball.index_.try_emplace(std::move(h), std::numeric_limits<std::uint32_t>::max());
        if (!fresh) continue;
        found.push_back(Pending{&it->first, static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(gi)});
        if (ball.nodes_.size() + found.size() > node_cap) throw CapExceeded(node_cap, ball.sphere_sizes());
      }
    }
    std::sort(found.begin(), found.end(),
              [](const Pending& l, const Pending& r) { return *l.element < *r.element; });
    std::vector<std::size_t> sphere;
    sphere.reserve(found.size());
    for (const auto& p : found) {
      const auto index = static_cast<std::uint32_t>(ball.nodes_.size());
      ball.index_.find(*p.element)->second = index;
      ball.nodes_.push_back(Node{p.element, static_cast<std::uint32_t>(r), p.parent, p.generator});
      sphere.push_back(index);
    }
    ball.spheres_.push_back(std::move(sphere));
  }
  return ball;
}

std::optional<std::size_t> BallIndex::find(const Element& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> BallIndex::sphere_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(spheres_.size());
  for (const auto& s : spheres_) sizes.push_back(s.size());
  return sizes;
}

std::size_t BallIndex::cumulative_size(std::size_t r) const {
  std::size_t total = 0;
  for (std::size_t i = 0; i <= std::min(r, radius_); ++i) total += spheres_[i].size();
  return total;
}

Word BallIndex::word(std::size_t index) const {
  Word w;
  w.reserve(nodes_[index].length);
  while (nodes_[index].length > 0) {
    w.push_back(nodes_[index].generator);
    index = nodes_[index].parent;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

LengthQuery word_length(const BallIndex& ball, const Element& g) {
  if (auto idx = ball.find(g)) return LengthQuery{ball.length(*idx), ball.length(*idx)};
  return LengthQuery{std::nullopt, ball.radius()};
}

LengthQuery extended_length(const BallIndex& ball, const Element& g) {
  if (auto idx = ball.find(g)) return LengthQuery{ball.length(*idx), ball.length(*idx)};
  const auto& model = ball.model();
  const std::size_t r = ball.radius();
  std::optional<std::size_t> best;
  // A geodesic of length L in (R, 2R] passes through the sphere of radius R
  // at a vertex v with |v^-1 g| = L - R.
  for (std::size_t idx : ball.sphere(r)) {
    Element rest = model.multiply(model.inverse(ball.element(idx)), g);
    if (auto j = ball.find(rest)) {
      std::size_t candidate = r + ball.length(*j);
      if (!best || candidate < *best) best = candidate;
    }
  }
  if (best) return LengthQuery{best, *best};
  return LengthQuery{std::nullopt, 2 * r};
}

SubgroupPointSet subgroup_points(const BallIndex& ball, const MarkedSubgroup& sub) {
  return subgroup_points(ball, sub, ball.radius());
}

SubgroupPointSet subgroup_points(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t max_length) {
  if (ball.model_ptr() != sub.ambient_ptr() && ball.model().name() != sub.ambient().name()) {
    throw InvalidArgument("subgroup_points: ball model " + ball.model().name() +
                          " differs from the subgroup's ambient " + sub.ambient().name());
  }
  SubgroupPointSet out;
  out.radius = std::min(max_length, ball.radius());
  for (std::size_t r = 0; r <= out.radius; ++r) {
    for (std::size_t idx : ball.sphere(r)) {
      if (sub.contains(ball.element(idx))) out.points.push_back(SubgroupPoint{idx, r});
    }
  }
  return out;
}

std::vector<DistanceValue> distance_to_subset(const BallIndex& ball, const SubgroupPointSet& targets) {
  if (targets.points.empty()) throw InvalidArgument("distance_to_subset: empty target set");
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(ball.size(), kUnseen);
  std::deque<std::size_t> queue;
  for (const auto& p : targets.points) {
    if (dist[p.index] == kUnseen) {
      dist[p.index] = 0;
      queue.push_back(p.index);
    }
  }
  const auto& model = ball.model();
  const auto& gens = model.generators();
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      auto w = ball.find(model.multiply(ball.element(v), gen.element));
      if (w && dist[*w] == kUnseen) {
        dist[*w] = dist[v] + 1;
        queue.push_back(*w);
      }
    }
  }

  const std::size_t radius = ball.radius();
  std::vector<DistanceValue> out(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const std::size_t len = ball.length(i);
    // Paths from element i of length < d stay inside Ball(len + d - 1).
    const std::size_t reach = radius - len + 1;
    if (dist[i] == kUnseen) {
      out[i] = DistanceValue{reach, Exactness::lower_bound};
    } else if (dist[i] == 0 || len + dist[i] - 1 <= radius) {
      out[i] = DistanceValue{dist[i], Exactness::exact};
    } else {
      out[i] = DistanceValue{std::min(dist[i], reach), Exactness::lower_bound};
    }
  }
  return out;
}

}  // namespace subdist
