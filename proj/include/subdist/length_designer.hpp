#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdist/cayley_metric.hpp"
#include "subdist/distortion.hpp"

namespace subdist {

// A sampled sublinear function f: N -> N to be dominated by a length function.
struct SourceFunction {
  std::string name;
  std::function<std::uint64_t(std::uint64_t)> eval;
};

// "sqrt" (ceil sqrt r), "log-scaled" (running max of ceil(r / (1 + floor log2 r)))
// and "power:k" (ceil r^(1/k)).
SourceFunction source_function(const std::string& name);

// Smallest m >= 0 with m^k >= z, in integer arithmetic.
std::uint64_t ceil_root(std::uint64_t z, unsigned k);

struct Plateau {
  std::size_t k = 0;
  std::uint64_t lo = 0;  // p_k
  std::uint64_t hi = 0;  // k * p_k
  std::uint64_t value = 0;
};

// Integer length function ell on Z with ell(0) = 0 and ell(-z) = ell(z).
class PrescribedLengthFunction {
 public:
  // `grid_max` = nullopt means ell is defined on all of Z.
  PrescribedLengthFunction(std::string name, std::function<std::uint64_t(std::uint64_t)> eval,
                           std::optional<std::uint64_t> grid_max, std::vector<std::uint64_t> breakpoints = {},
                           std::vector<Plateau> plateaus = {}, std::string source = {});

  std::uint64_t operator()(std::int64_t z) const;

  const std::string& name() const { return name_; }
  const std::string& source() const { return source_; }
  std::optional<std::uint64_t> grid_max() const { return grid_max_; }
  // p_1 < p_2 < ...
  const std::vector<std::uint64_t>& breakpoints() const { return breakpoints_; }
  const std::vector<Plateau>& plateaus() const { return plateaus_; }

 private:
  std::string name_;
  std::function<std::uint64_t(std::uint64_t)> eval_;
  std::optional<std::uint64_t> grid_max_;
  std::vector<std::uint64_t> breakpoints_;
  std::vector<Plateau> plateaus_;
  std::string source_;
};

// Inductive construction on the integer grid 0..grid_max:
//   p_1 = 1, ell(1) = 1;
//   p_{k+1} = least P >= k p_k with f(r) <= r/(k+1)! for every grid r >= (k+1)P;
//   ell(s) = ceil(s/k!) on (k p_k, p_{k+1}], ceil(p_{k+1}/k!) on [p_{k+1}, (k+1)p_{k+1}];
//   past the last plateau ell(s) = ceil(s/k_max!).
// Throws InvalidArgument when f is not non-decreasing with 1 <= f(r) <= r, or
// when the k_max plateaus do not fit below grid_max.
PrescribedLengthFunction build_ell(const SourceFunction& f, std::size_t k_max, std::uint64_t grid_max);

// ell(z) = ceil(|z|^(1/k)).
PrescribedLengthFunction power_length(unsigned k);

struct LengthCertificate {
  std::uint64_t grid_max = 0;
  std::uint64_t exhaustive_limit = 0;  // all pairs with m + n <= this were checked
  std::size_t sampled_pairs = 0;
  bool monotone = true;
  bool subadditive = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> subadditivity_violation;
  bool dominates = true;
  std::optional<std::uint64_t> domination_violation;
  bool plateaus_hold = true;
  std::size_t plateau_count = 0;

  bool ok() const { return monotone && subadditive && dominates && plateaus_hold; }
};

// Checks, on 1..grid_max: ell non-decreasing, ell(m) + ell(n) >= ell(m + n)
// (every pair up to exhaustive_limit, `samples` seeded random pairs above),
// ell >= f when f is given, and constancy of every recorded plateau.
LengthCertificate certify(const PrescribedLengthFunction& ell, const SourceFunction* f, std::uint64_t grid_max,
                          std::uint64_t exhaustive_limit = 3000, std::size_t samples = 200'000,
                          std::uint64_t seed = 1);

// Z with |z|_X := ell(z) and |z|_Y := |z|.
class AbstractDistortedLine {
 public:
  explicit AbstractDistortedLine(PrescribedLengthFunction ell) : ell_(std::move(ell)) {}

  const PrescribedLengthFunction& ell() const { return ell_; }

  // max{|z| : ell(z) <= n}
  std::uint64_t delta(std::uint64_t n) const;
  // min{|z| : ell(z) > n}
  std::uint64_t nabla(std::uint64_t n) const;
  // Longest shortest signed-coin representation of z with ell(z) <= n over
  // the coins {y != 0 : ell(y) <= m}; coin-BFS, not a closed form.
  std::uint64_t mu(std::uint64_t m, std::uint64_t n) const;

 private:
  // First z >= 0 with ell(z) > n; throws when the grid runs out.
  std::uint64_t first_above(std::uint64_t n) const;

  PrescribedLengthFunction ell_;
};

DistortionTable abstract_table(const AbstractDistortedLine& line, std::size_t n_max);
MuTable abstract_mu_table(const AbstractDistortedLine& line, const std::vector<std::size_t>& ms,
                          const std::vector<std::size_t>& ns);

}  // namespace subdist
