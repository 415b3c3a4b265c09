#include "subdist/rpath_metric.hpp"

#include <deque>
#include <random>

#include <boost/pending/disjoint_sets.hpp>

namespace subdist {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::size_t basepoint,
                                     const DistanceFn& distance)
    : labels_(std::move(labels)), basepoint_(basepoint) {
  if (labels_.empty()) throw InvalidArgument("metric space needs at least one point");
  if (basepoint_ >= labels_.size()) throw InvalidArgument("basepoint index out of range");
  const std::size_t n = labels_.size();
  table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      MetricDistance d = distance(i, j);
      if (d.value < Rational(0)) throw InvalidArgument("negative distance between " + labels_[i] + " and " + labels_[j]);
      table_[i * n + j] = d;
      table_[j * n + i] = d;
    }
  }
}

std::optional<std::size_t> FiniteMetricSpace::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

bool FiniteMetricSpace::within(std::size_t i, std::size_t j, const Rational& r) const {
  const auto& d = distance(i, j);
  return d.exact && d.value <= r;
}

void FiniteMetricSpace::mark_induced(std::size_t truncation, std::size_t slack) {
  provenance_ = Provenance::induced;
  truncation_ = truncation;
  slack_ = slack;
}

FiniteMetricSpace line_space(const std::vector<std::int64_t>& points, std::size_t basepoint) {
  std::vector<std::string> labels;
  labels.reserve(points.size());
  for (auto p : points) labels.push_back(std::to_string(p));
  return FiniteMetricSpace(std::move(labels), basepoint, [&](std::size_t i, std::size_t j) {
    const std::int64_t d = points[i] > points[j] ? points[i] - points[j] : points[j] - points[i];
    return MetricDistance{Rational(d), true};
  });
}

FiniteMetricSpace integer_segment(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("integer_segment: hi < lo");
  std::vector<std::int64_t> pts;
  for (std::int64_t x = lo; x <= hi; ++x) pts.push_back(x);
  return line_space(pts, 0);
}

std::optional<std::string> check_metric_axioms(const FiniteMetricSpace& space, std::size_t triples,
                                               std::uint64_t seed) {
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& d = space.distance(i, j);
      if ((i == j) != (d.exact && d.value == Rational(0))) {
        return "d(" + space.label(i) + ", " + space.label(j) + ") violates d(p,q) = 0 iff p = q";
      }
      const auto& back = space.distance(j, i);
      if (d.value != back.value || d.exact != back.exact) {
        return "asymmetric distance between " + space.label(i) + " and " + space.label(j);
      }
    }
  }
  auto check = [&](std::size_t a, std::size_t b, std::size_t c) -> std::optional<std::string> {
    const auto& ab = space.distance(a, b);
    const auto& bc = space.distance(b, c);
    const auto& ac = space.distance(a, c);
    // Only decidable when the two short sides are exact. An inexact d(a, c)
    // is known to exceed its value, so it fails once that already reaches ab + bc.
    if (!ab.exact || !bc.exact) return std::nullopt;
    const bool fails = ac.exact ? ac.value > ab.value + bc.value : ac.value >= ab.value + bc.value;
    if (fails) {
      return "triangle inequality fails at (" + space.label(a) + ", " + space.label(b) + ", " + space.label(c) + ")";
    }
    return std::nullopt;
  };
  if (n * n * n <= triples) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (auto err = check(a, b, c)) return err;
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < triples; ++t) {
    if (auto err = check(pick(rng), pick(rng), pick(rng))) return err;
  }
  return std::nullopt;
}

std::vector<std::optional<std::size_t>> rpath_lengths(const FiniteMetricSpace& space, const Rational& r) {
  if (r <= Rational(0)) throw InvalidArgument("r must be positive");
  const std::size_t n = space.size();
  std::vector<std::optional<std::size_t>> dist(n);
  std::deque<std::size_t> queue{space.basepoint()};
  dist[space.basepoint()] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w = 0; w < n; ++w) {
      if (!dist[w] && space.within(v, w, r)) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> rpath_length(const FiniteMetricSpace& space, const Rational& r, std::size_t target) {
  if (target >= space.size()) throw InvalidArgument("rpath_length: target out of range");
  return rpath_lengths(space, r)[target];
}

NuResult nu(const FiniteMetricSpace& space, const Rational& m, const Rational& n) {
  if (n < Rational(0)) throw InvalidArgument("nu: n must be non-negative");
  const bool induced = space.provenance() == Provenance::induced;
  if (induced && n > Rational(static_cast<std::int64_t>(space.truncation()))) {
    throw InvalidArgument("nu: n exceeds the truncation radius of the induced space");
  }
  const auto lengths = rpath_lengths(space, m);
  const Rational extent(static_cast<std::int64_t>(space.truncation() + space.slack()));
  NuResult out;
  for (std::size_t t = 0; t < space.size(); ++t) {
    if (!space.within(space.basepoint(), t, n)) continue;
    if (!lengths[t]) {
      out.unreachable.push_back(t);
      continue;
    }
    const std::size_t k = *lengths[t];
    if (!out.witness || k > out.value) {
      out.value = k;
      out.witness = t;
    }
    // A shorter m-path stays within (d(s,t) + (k-1)m)/2 of the basepoint.
    if (induced && k > 0) {
      const Rational reach = (space.distance(space.basepoint(), t).value + Rational(static_cast<std::int64_t>(k - 1)) * m) / 2;
      if (reach > extent) out.exactness = Exactness::upper_uncertain;
    }
  }
  if (!out.unreachable.empty() && induced) out.exactness = Exactness::upper_uncertain;
  return out;
}

ConnectivityReport is_r_connected(const FiniteMetricSpace& space, const Rational& r) {
  const std::size_t n = space.size();
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> sets(rank.data(), parent.data());
  for (std::size_t i = 0; i < n; ++i) sets.make_set(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space.within(i, j, r)) sets.union_set(i, j);
    }
  }
  std::size_t components = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sets.find_set(i) == i) ++components;
  }
  return ConnectivityReport{components == 1, components};
}

FiniteMetricSpace induced_space(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t truncation,
                                std::size_t slack) {
  if (truncation == 0) throw InvalidArgument("induced_space: truncation must be positive");
  if (truncation + slack > ball.radius()) {
    throw InvalidArgument("induced_space: truncation + slack = " + std::to_string(truncation + slack) +
                          " exceeds ball radius " + std::to_string(ball.radius()));
  }
  const auto points = subgroup_points(ball, sub, truncation + slack);
  const auto& model = ball.model();
  std::vector<Element> elements;
  std::vector<std::string> labels;
  for (const auto& p : points.points) {
    elements.push_back(ball.element(p.index));
    labels.push_back(model.format(elements.back()));
  }
  std::vector<Element> inverses;
  for (const auto& e : elements) inverses.push_back(model.inverse(e));
  // The identity has length 0 and sorts first.
  FiniteMetricSpace space(std::move(labels), 0, [&](std::size_t i, std::size_t j) {
    auto q = word_length(ball, model.multiply(inverses[i], elements[j]));
    if (q.known()) return MetricDistance{Rational(static_cast<std::int64_t>(*q.exact)), true};
    return MetricDistance{Rational(static_cast<std::int64_t>(q.bound)), false};
  });
  space.mark_induced(truncation, slack);
  return space;
}

}  // namespace subdist
