#include "subdist/qc_probe.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace subdist {
namespace {

std::size_t require_index(const BallIndex& ball, const Element& h, const char* what) {
  auto idx = ball.find(h);
  if (!idx) {
    throw InvalidArgument(std::string(what) + ": " + ball.model().format(h) + " lies outside the ball of radius " +
                          std::to_string(ball.radius()));
  }
  return *idx;
}

// Marks the geodesic vertices of e -> h and returns them level by level.
std::vector<std::vector<std::size_t>> geodesic_levels(const BallIndex& ball, std::size_t target,
                                                      std::vector<char>& mark) {
  const auto& model = ball.model();
  const std::size_t len = ball.length(target);
  std::vector<std::vector<std::size_t>> levels(len + 1);
  mark.assign(ball.size(), 0);
  levels[len].push_back(target);
  mark[target] = 1;
  for (std::size_t j = len; j > 0; --j) {
    for (std::size_t v : levels[j]) {
      for (const auto& gen : model.generators()) {
        auto u = ball.find(model.multiply(ball.element(v), gen.element));
        if (u && ball.length(*u) == j - 1 && !mark[*u]) {
          mark[*u] = 1;
          levels[j - 1].push_back(*u);
        }
      }
    }
  }
  return levels;
}

bool lambda_bound_holds(std::size_t steps, std::size_t distance, const QRational& lambda, const QRational& c) {
  return QRational(static_cast<std::int64_t>(steps)) <= lambda * (QRational(static_cast<std::int64_t>(distance)) + c);
}

class SubgroupDistanceCache {
 public:
  SubgroupDistanceCache(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t d_cap)
      : ball_(ball), sub_(sub), d_cap_(d_cap) {}

  const DistanceValue& operator()(const Element& v) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, distance_to_subgroup(ball_, sub_, v, d_cap_)).first;
    return it->second;
  }

 private:
  const BallIndex& ball_;
  const MarkedSubgroup& sub_;
  std::size_t d_cap_;
  std::unordered_map<Element, DistanceValue, ElementHash> cache_;
};

// Incremental (lambda, C) checking for unit-step paths whose pairwise
// distances are all within the ball.
class PathBuilder {
 public:
  PathBuilder(const BallIndex& ball, const QRational& lambda, const QRational& c)
      : ball_(ball), model_(ball.model()), lambda_(lambda), c_(c) {}

  bool admissible(const Element& w) const {
    const std::size_t j = inverses_.size();
    for (std::size_t i = 0; i < j; ++i) {
      auto q = word_length(ball_, model_.multiply(inverses_[i], w));
      // Outside the ball the distance exceeds the radius, which already
      // bounds every index gap the caller allows.
      if (q.known() && !lambda_bound_holds(j - i, *q.exact, lambda_, c_)) return false;
    }
    return true;
  }

  void push(const Element& w) {
    vertices_.push_back(w);
    inverses_.push_back(model_.inverse(w));
  }
  void pop() {
    vertices_.pop_back();
    inverses_.pop_back();
  }
  void clear() {
    vertices_.clear();
    inverses_.clear();
  }
  const std::vector<Element>& vertices() const { return vertices_; }

 private:
  const BallIndex& ball_;
  const GroupModel& model_;
  QRational lambda_;
  QRational c_;
  std::vector<Element> vertices_;
  std::vector<Element> inverses_;
};

}  // namespace

DistanceValue distance_to_subgroup(const BallIndex& ball, const MarkedSubgroup& sub, const Element& v,
                                   std::size_t d_cap) {
  if (d_cap > ball.radius()) {
    throw InvalidArgument("distance_to_subgroup: d_cap " + std::to_string(d_cap) + " exceeds ball radius " +
                          std::to_string(ball.radius()));
  }
  const auto& model = ball.model();
  for (std::size_t r = 0; r <= d_cap; ++r) {
    for (std::size_t idx : ball.sphere(r)) {
      if (sub.contains(model.multiply(v, ball.element(idx)))) return DistanceValue{r, Exactness::exact};
    }
  }
  return DistanceValue{d_cap + 1, Exactness::lower_bound};
}

std::vector<std::size_t> geodesic_vertices(const BallIndex& ball, const Element& h) {
  std::vector<char> mark;
  auto levels = geodesic_levels(ball, require_index(ball, h, "geodesic_vertices"), mark);
  std::vector<std::size_t> out;
  for (auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  std::sort(out.begin(), out.end());
  return out;
}

Word geodesic_word_through(const BallIndex& ball, const Element& h, const Element& v) {
  const std::size_t target = require_index(ball, h, "geodesic_word_through");
  std::vector<char> mark;
  geodesic_levels(ball, target, mark);
  auto through = ball.find(v);
  if (!through || !mark[*through]) {
    throw InvalidArgument("geodesic_word_through: " + ball.model().format(v) + " is not on a geodesic to " +
                          ball.model().format(h));
  }
  const auto& model = ball.model();
  const auto& gens = model.generators();
  Word word = ball.word(*through);
  std::size_t cur = *through;
  while (cur != target) {
    bool stepped = false;
    for (std::size_t gi = 0; gi < gens.size() && !stepped; ++gi) {
      auto u = ball.find(model.multiply(ball.element(cur), gens[gi].element));
      if (u && mark[*u] && ball.length(*u) == ball.length(cur) + 1) {
        word.push_back(gi);
        cur = *u;
        stepped = true;
      }
    }
    if (!stepped) throw std::logic_error("geodesic_word_through: broken geodesic level structure");
  }
  return word;
}

ExcursionEntry geodesic_excursion(const BallIndex& ball, const MarkedSubgroup& sub, const Element& h,
                                  std::size_t d_cap) {
  if (!sub.contains(h)) throw InvalidArgument("geodesic_excursion: target is not in " + sub.name());
  ExcursionEntry entry;
  entry.target = h;
  entry.length = ball.length(require_index(ball, h, "geodesic_excursion"));
  const auto vertices = geodesic_vertices(ball, h);
  entry.vertices = vertices.size();
  for (std::size_t idx : vertices) {
    const Element& v = ball.element(idx);
    const auto d = distance_to_subgroup(ball, sub, v, d_cap);
    if (d.exactness != Exactness::exact) entry.exactness = Exactness::lower_bound;
    if (!entry.worst_vertex || d.value > entry.excursion) {
      entry.excursion = std::max(entry.excursion, d.value);
      entry.worst_vertex = v;
    }
  }
  return entry;
}

std::vector<QcRow> quasiconvexity_report(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n_max,
                                         std::size_t d_cap) {
  if (n_max > ball.radius()) {
    throw InvalidArgument("quasiconvexity_report: n_max exceeds ball radius " + std::to_string(ball.radius()));
  }
  const auto points = subgroup_points(ball, sub, n_max);
  std::vector<QcRow> rows;
  QcRow running;
  std::size_t cursor = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    while (cursor < points.size() && points.points[cursor].length <= n) {
      const auto entry = geodesic_excursion(ball, sub, ball.element(points.points[cursor].index), d_cap);
      if (entry.exactness != Exactness::exact) running.exactness = Exactness::lower_bound;
      if (!running.witness || entry.excursion > running.max_excursion) {
        running.max_excursion = std::max(running.max_excursion, entry.excursion);
        running.witness = entry.target;
      }
      ++cursor;
    }
    running.n = n;
    rows.push_back(running);
  }
  return rows;
}

std::vector<Element> path_from_word(const GroupModel& model, const Element& start, const Word& word) {
  std::vector<Element> path{start};
  for (std::size_t gi : word) path.push_back(model.multiply(path.back(), model.generators().at(gi).element));
  return path;
}

QuasiGeodesicCheck check_quasi_geodesic(const BallIndex& ball, const std::vector<Element>& path,
                                        const QRational& lambda, const QRational& c) {
  if (lambda < QRational(1) || c < QRational(0)) {
    throw InvalidArgument("quasi-geodesic constants need lambda >= 1 and C >= 0");
  }
  const auto& model = ball.model();
  std::vector<Element> inverses;
  for (const auto& p : path) inverses.push_back(model.inverse(p));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Element step = model.multiply(inverses[i], path[i + 1]);
    const bool unit = std::any_of(model.generators().begin(), model.generators().end(),
                                  [&](const Generator& g) { return g.element == step; });
    if (!unit) return {false, "step " + std::to_string(i) + " is not a generator"};
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      auto q = extended_length(ball, model.multiply(inverses[i], path[j]));
      const std::size_t d = q.known() ? *q.exact : q.bound + 1;
      if (!lambda_bound_holds(j - i, d, lambda, c)) {
        return {false, (q.known() ? "inequality fails" : "distance unresolved") + std::string(" at indices ") +
                           std::to_string(i) + ", " + std::to_string(j)};
      }
    }
  }
  return {true, {}};
}

QgExcursion quasi_geodesic_excursion(const BallIndex& ball, const MarkedSubgroup& sub, const QRational& lambda,
                                     const QRational& c, const Element& from, const Element& to,
                                     const QgSearchOptions& opts) {
  if (lambda < QRational(1) || c < QRational(0)) {
    throw InvalidArgument("quasi-geodesic constants need lambda >= 1 and C >= 0");
  }
  if (!sub.contains(from) || !sub.contains(to)) throw InvalidArgument("endpoints must lie in " + sub.name());
  const auto& model = ball.model();
  const auto& gens = model.generators();
  const Element from_inv = model.inverse(from);
  const auto span = word_length(ball, model.multiply(from_inv, to));
  if (!span.known()) throw InvalidArgument("quasi_geodesic_excursion: endpoints are farther apart than the radius");
  const QRational budget_q = lambda * (QRational(static_cast<std::int64_t>(*span.exact)) + c);
  const auto budget = static_cast<std::size_t>(budget_q.numerator() / budget_q.denominator());
  if (budget > ball.radius()) {
    throw InvalidArgument("quasi_geodesic_excursion: path budget " + std::to_string(budget) +
                          " exceeds ball radius " + std::to_string(ball.radius()));
  }

  SubgroupDistanceCache dist_h(ball, sub, opts.d_cap);
  auto remaining_distance = [&](const Element& v) -> std::optional<std::size_t> {
    auto q = word_length(ball, model.multiply(model.inverse(v), to));
    return q.exact;
  };

  QgExcursion best;
  auto offer = [&](const std::vector<Element>& path, const char* method) {
    ++best.paths_checked;
    std::size_t e = 0;
    for (const auto& v : path) e = std::max(e, dist_h(v).value);
    if (best.witness.empty() || e > best.lower_bound) {
      best.lower_bound = e;
      best.witness = path;
      best.method = method;
    }
  };

  PathBuilder builder(ball, lambda, c);

  // Exhaustive depth-first search under path_cap.
  std::size_t expansions = 0;
  bool capped = false;
  auto dfs = [&](auto&& self) -> void {
    if (capped) return;
    const Element v = builder.vertices().back();
    const std::size_t depth = builder.vertices().size() - 1;
    if (v == to) offer(builder.vertices(), "exhaustive");
    if (depth == budget) return;
    if (++expansions > opts.path_cap) {
      capped = true;
      return;
    }
    for (const auto& g : gens) {
      Element w = model.multiply(v, g.element);
      auto rest = remaining_distance(w);
      if (!rest || *rest > budget - depth - 1 || !builder.admissible(w)) continue;
      builder.push(w);
      self(self);
      builder.pop();
      if (capped) return;
    }
  };
  builder.push(from);
  dfs(dfs);
  builder.clear();
  best.exhaustive_complete = !capped;

  // Two geodesic legs through a midpoint from * u.
  std::size_t detours = 0;
  for (std::size_t idx = 0; idx < ball.size() && ball.length(idx) <= budget && detours < opts.path_cap; ++idx) {
    const Element w = model.multiply(from, ball.element(idx));
    auto rest = ball.find(model.multiply(model.inverse(w), to));
    if (!rest || ball.length(idx) + ball.length(*rest) > budget) continue;
    ++detours;
    auto path = path_from_word(model, from, ball.word(idx));
    auto leg = path_from_word(model, w, ball.word(*rest));
    path.insert(path.end(), leg.begin() + 1, leg.end());
    if (check_quasi_geodesic(ball, path, lambda, c).ok) offer(path, "detour");
  }

  // Seeded random admissible walks.
  std::mt19937_64 rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    builder.push(from);
    while (builder.vertices().back() != to || builder.vertices().size() == 1) {
      const std::size_t depth = builder.vertices().size() - 1;
      if (depth == budget) break;
      std::vector<Element> options;
      for (const auto& g : gens) {
        Element w = model.multiply(builder.vertices().back(), g.element);
        auto rest = remaining_distance(w);
        if (rest && *rest <= budget - depth - 1 && builder.admissible(w)) options.push_back(std::move(w));
      }
      if (options.empty()) break;
      builder.push(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    }
    if (builder.vertices().back() == to) offer(builder.vertices(), "random");
    builder.clear();
  }
  return best;
}

}  // namespace subdist
