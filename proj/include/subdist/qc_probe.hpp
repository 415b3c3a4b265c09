#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "subdist/cayley_metric.hpp"
#include "subdist/group_models.hpp"

namespace subdist {

// d(v, H) = min{|u|_X : v u in H}. Exact when <= d_cap; otherwise
// {d_cap + 1, lower_bound}. Requires d_cap <= ball radius.
DistanceValue distance_to_subgroup(const BallIndex& ball, const MarkedSubgroup& sub, const Element& v,
                                   std::size_t d_cap);

// Ball indices of every vertex on some geodesic e -> h, i.e. every v with
// |v| + |v^-1 h| = |h|, ordered by (|v|, canonical key). Requires |h| <= radius.
std::vector<std::size_t> geodesic_vertices(const BallIndex& ball, const Element& h);

// A geodesic word for h whose prefix of length |v| evaluates to v; v must be
// one of geodesic_vertices(ball, h).
Word geodesic_word_through(const BallIndex& ball, const Element& h, const Element& v);

struct ExcursionEntry {
  Element target;
  std::size_t length = 0;     // |h|_X
  std::size_t excursion = 0;  // max d(v, H) over geodesic vertices
  Exactness exactness = Exactness::exact;
  std::optional<Element> worst_vertex;
  std::size_t vertices = 0;
};

ExcursionEntry geodesic_excursion(const BallIndex& ball, const MarkedSubgroup& sub, const Element& h,
                                  std::size_t d_cap);

struct QcRow {
  std::size_t n = 0;
  std::size_t max_excursion = 0;  // M(n)
  Exactness exactness = Exactness::exact;
  std::optional<Element> witness;
};

// M(n) = max excursion over h in H with |h|_X <= n, for n = 1..n_max.
std::vector<QcRow> quasiconvexity_report(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n_max,
                                         std::size_t d_cap);

using QRational = boost::rational<std::int64_t>;

struct QuasiGeodesicCheck {
  bool ok = true;
  std::string reason;  // first failure, empty when ok
};

// Unit steps between consecutive vertices and j - i <= lambda (d(p_i, p_j) + C)
// for every i < j. Distances come from the ball (midpoint-extended); a pair
// whose distance cannot be resolved fails unless its lower bound suffices.
QuasiGeodesicCheck check_quasi_geodesic(const BallIndex& ball, const std::vector<Element>& path,
                                        const QRational& lambda, const QRational& c);

// Vertices visited by reading `word` from `start`.
std::vector<Element> path_from_word(const GroupModel& model, const Element& start, const Word& word);

struct QgSearchOptions {
  std::size_t d_cap = 8;
  std::size_t path_cap = 200'000;  // node expansions in the exhaustive search
  std::size_t samples = 2'000;     // random paths
  std::uint64_t seed = 1;
};

struct QgExcursion {
  std::size_t lower_bound = 0;  // excursion certified by `witness`
  std::vector<Element> witness;
  std::string method;  // "exhaustive", "detour" or "random"
  std::size_t paths_checked = 0;
  bool exhaustive_complete = false;  // the exhaustive search finished under path_cap
};

// Best excursion over (lambda, C)-quasi-geodesic unit-step paths from `from`
// to `to` found by exhaustive search (up to path_cap), two-leg geodesic
// detours through every admissible midpoint, and seeded random paths. Only
// lower bounds are certified. Requires floor(lambda (d + C)) <= ball radius.
QgExcursion quasi_geodesic_excursion(const BallIndex& ball, const MarkedSubgroup& sub, const QRational& lambda,
                                     const QRational& c, const Element& from, const Element& to,
                                     const QgSearchOptions& opts = {});

}  // namespace subdist
