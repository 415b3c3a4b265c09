#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdist/cayley_metric.hpp"
#include "subdist/group_models.hpp"

namespace subdist {

// A quantity that is mathematically undefined for the given inputs, such as
// mu(m, n) when H meets Ball_X(m) only in the identity.
class UndefinedValue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Witnessed {
  std::size_t value = 0;
  Exactness exactness = Exactness::exact;
  std::optional<Element> witness;
};

// Limits for intrinsic searches over H when |h|_Y has no closed form.
struct IntrinsicOptions {
  std::size_t node_cap = 1'000'000;
  std::size_t max_radius = 256;
};

// Delta(n) = max{|h|_Y : h in H, |h|_X <= n}. Requires n <= ball radius.
Witnessed delta(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n,
                const IntrinsicOptions& opts = {});

// nabla(n) = min{|h|_Y : h in H, |h|_X > n}, found by walking H in order of
// increasing |h|_Y. Requires n <= ball radius so "|h|_X > n" is decidable.
Witnessed nabla(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n,
                const IntrinsicOptions& opts = {});

enum class MuMethod {
  automatic,    // coin search when H is free abelian on Y, closure otherwise
  coin_search,  // shortest signed sums in the coordinates of H
  closure,      // breadth-first closure over ambient elements of H
};

struct MuOptions {
  MuMethod method = MuMethod::automatic;
  std::size_t visit_cap = 2'000'000;
};

// mu(m, n) = max over h in H with |h|_X <= n of the word length of h over the
// alphabet Y_m = H ∩ Ball_X(m). Returns 0 when H ∩ Ball_X(n) = {e}.
Witnessed mu(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t m, std::size_t n,
             const MuOptions& opts = {});

struct TableEntry {
  std::size_t n = 0;
  std::size_t value = 0;
  Exactness exactness = Exactness::exact;
  std::string witness;
};

struct DistortionTable {
  std::vector<TableEntry> delta;
  std::vector<TableEntry> nabla;

  const TableEntry* find_delta(std::size_t n) const;
  const TableEntry* find_nabla(std::size_t n) const;
};

// Delta and nabla for n = 1..n_max (nabla entries need n <= ball radius).
DistortionTable distortion_table(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n_max,
                                 const IntrinsicOptions& opts = {});

struct MuCell {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t value = 0;
  Exactness exactness = Exactness::exact;
  std::string witness;
};

struct MuTable {
  std::vector<MuCell> cells;

  const MuCell* find(std::size_t m, std::size_t n) const;
};

// Every (m, n) in the cartesian product. Cells where Y_m is trivial are left out.
MuTable mu_table(const BallIndex& ball, const MarkedSubgroup& sub, const std::vector<std::size_t>& ms,
                 const std::vector<std::size_t>& ns, const MuOptions& opts = {});

struct SandwichViolation {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t mu = 0;
  std::size_t bound = 0;
  bool lower = true;  // which side of the sandwich failed
};

struct SandwichReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t upper_checked = 0;
  std::vector<SandwichViolation> violations;

  bool holds() const { return violations.empty(); }
};

// For every exact cell: ceil(Delta(n)/Delta(m)) <= mu(m,n), and when
// nabla(m) >= 2 also mu(m,n) <= ceil(Delta(n)/(nabla(m)-1)).
SandwichReport check_sandwich(const DistortionTable& table, const MuTable& mu_table);

struct RatioProbe {
  std::size_t c = 0;
  std::vector<MuCell> entries;  // (i, c*i)
  std::size_t max_value = 0;
  bool non_decreasing = true;
  bool strictly_increasing = true;
  bool constant = true;
};

// The slice i -> mu(i, c*i) for i in [i_lo, i_hi]; requires c * i_hi <= radius.
RatioProbe mu_ratio_probe(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t c, std::size_t i_lo,
                          std::size_t i_hi, const MuOptions& opts = {});

// Least-squares fits of log Delta against log n and against n. Purely
// descriptive: asymptotic equivalence cannot be decided from a finite table.
struct GrowthFit {
  std::size_t samples = 0;
  double degree = 0;           // slope on log-log axes
  double degree_residual = 0;  // RMS residual of that fit
  double log_base = 0;         // slope on semi-log axes
  double base = 1;             // exp(log_base)
  double base_residual = 0;
  std::string classification;  // "polynomial" or "exponential" (heuristic)
};

GrowthFit fit_report(const DistortionTable& table);

// min and max of Delta(n)/nabla(n) over exact entries.
struct RatioBand {
  double low = 0;
  double high = 0;
  std::size_t samples = 0;
};

RatioBand uniformity_band(const DistortionTable& table);

}  // namespace subdist
