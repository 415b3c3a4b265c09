#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "subdist/cayley_metric.hpp"
#include "subdist/group_models.hpp"

namespace subdist {

using Rational = boost::rational<std::int64_t>;

// A pairwise distance. When `exact` is false the true distance is strictly
// larger than `value` and callers must treat the pair as "too far".
struct MetricDistance {
  Rational value{0};
  bool exact = true;
};

enum class Provenance { standalone, induced };

// Finite pointed metric space with a precomputed distance table.
class FiniteMetricSpace {
 public:
  using DistanceFn = std::function<MetricDistance(std::size_t, std::size_t)>;

  FiniteMetricSpace(std::vector<std::string> labels, std::size_t basepoint, const DistanceFn& distance);

  std::size_t size() const { return labels_.size(); }
  std::size_t basepoint() const { return basepoint_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> find(const std::string& label) const;
  const MetricDistance& distance(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }

  // Pairs at distance <= r; inexact pairs never qualify.
  bool within(std::size_t i, std::size_t j, const Rational& r) const;

  Provenance provenance() const { return provenance_; }
  // Induced spaces only: points with |h|_X <= truncation form the core; the
  // remaining points up to truncation + slack form the shell.
  std::size_t truncation() const { return truncation_; }
  std::size_t slack() const { return slack_; }
  void mark_induced(std::size_t truncation, std::size_t slack);

 private:
  std::vector<std::string> labels_;
  std::size_t basepoint_;
  std::vector<MetricDistance> table_;
  Provenance provenance_ = Provenance::standalone;
  std::size_t truncation_ = 0;
  std::size_t slack_ = 0;
};

// Points given as integers on the real line with |x - y| distances.
FiniteMetricSpace line_space(const std::vector<std::int64_t>& points, std::size_t basepoint = 0);
// {lo, ..., hi} with basepoint lo.
FiniteMetricSpace integer_segment(std::int64_t lo, std::int64_t hi);

// Checks positivity, symmetry on all pairs and the triangle inequality on
// up to `triples` seeded random triples (all triples when the space is small).
// Returns a description of the first failure.
std::optional<std::string> check_metric_axioms(const FiniteMetricSpace& space, std::size_t triples = 20'000,
                                               std::uint64_t seed = 1);

// Shortest r-path length from the basepoint to every point; nullopt when no
// r-path exists.
std::vector<std::optional<std::size_t>> rpath_lengths(const FiniteMetricSpace& space, const Rational& r);
std::optional<std::size_t> rpath_length(const FiniteMetricSpace& space, const Rational& r, std::size_t target);

struct NuResult {
  std::size_t value = 0;
  Exactness exactness = Exactness::exact;
  std::optional<std::size_t> witness;
  std::vector<std::size_t> unreachable;  // targets with no m-path in the space

  bool complete() const { return unreachable.empty(); }
};

// nu(m, n) = max |t|_m over points with d(s, t) <= n. On induced spaces a
// value is exact only when every shorter m-path would have stayed inside the
// space; otherwise it is flagged upper-uncertain.
NuResult nu(const FiniteMetricSpace& space, const Rational& m, const Rational& n);

struct ConnectivityReport {
  bool connected = true;
  std::size_t components = 1;
};

ConnectivityReport is_r_connected(const FiniteMetricSpace& space, const Rational& r);

// H ∩ Ball_X(truncation + slack) with d(h, k) = |h^-1 k|_X read from the ball;
// pairs whose quotient lies outside the ball are flagged inexact.
FiniteMetricSpace induced_space(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t truncation,
                                std::size_t slack);

}  // namespace subdist
