#include "subdist/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "subdist/coin_search.hpp"

namespace subdist {
namespace {

void require_radius(const BallIndex& ball, std::size_t n, const char* what) {
  if (n > ball.radius()) {
    throw InvalidArgument(std::string(what) + ": n = " + std::to_string(n) + " exceeds ball radius " +
                          std::to_string(ball.radius()));
  }
}

// All integer vectors of dimension dim with L1 norm exactly r, in lexicographic order.
void l1_sphere(std::size_t dim, std::int64_t r, std::vector<IntPoint>& out, IntPoint& prefix) {
  if (prefix.size() + 1 == dim) {
    prefix.push_back(-r);
    out.push_back(prefix);
    prefix.pop_back();
    if (r != 0) {
      prefix.push_back(r);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (std::int64_t x = -r; x <= r; ++x) {
    prefix.push_back(x);
    l1_sphere(dim, r - std::abs(x), out, prefix);
    prefix.pop_back();
  }
}

// Lazily built intrinsic ball of H over Y, used when |h|_Y has no closed form.
class IntrinsicBall {
 public:
  IntrinsicBall(const MarkedSubgroup& sub, const IntrinsicOptions& opts) : sub_(sub), opts_(opts) {}

  const BallIndex& get() {
    if (!ball_) {
      try {
        ball_.emplace(BallIndex::enumerate(sub_.intrinsic_ptr(), opts_.max_radius, opts_.node_cap));
      } catch (const CapExceeded& e) {
        ball_.emplace(BallIndex::enumerate(sub_.intrinsic_ptr(), e.completed_radius(), opts_.node_cap));
      }
    }
    return *ball_;
  }

 private:
  const MarkedSubgroup& sub_;
  IntrinsicOptions opts_;
  std::optional<BallIndex> ball_;
};

class IntrinsicLengths {
 public:
  IntrinsicLengths(const BallIndex& ball, const MarkedSubgroup& sub, const IntrinsicOptions& opts)
      : ball_(ball), sub_(sub), intrinsic_(sub, opts) {}

  // |h|_Y for an ambient member h, or a lower bound when the search ran out.
  std::pair<std::size_t, Exactness> operator()(const Element& h) {
    if (sub_.has_closed_form_length()) return {sub_.intrinsic_length(h), Exactness::exact};
    if (sub_.equals_ambient()) {
      if (auto idx = ball_.find(h)) return {ball_.length(*idx), Exactness::exact};
    }
    const BallIndex& ib = intrinsic_.get();
    auto local = sub_.to_intrinsic(h);
    if (!local) throw InvalidArgument("intrinsic length requested for a non-member");
    if (auto idx = ib.find(*local)) return {ib.length(*idx), Exactness::exact};
    return {ib.radius() + 1, Exactness::lower_bound};
  }

  // Ambient elements of H with |h|_Y == r; nullopt when r is past the
  // enumerable horizon.
  std::optional<std::vector<Element>> sphere(std::size_t r) {
    std::vector<Element> out;
    if (auto dim = sub_.abelian_rank()) {
      std::vector<IntPoint> pts;
      IntPoint prefix;
      l1_sphere(*dim, static_cast<std::int64_t>(r), pts, prefix);
      for (const auto& p : pts) out.push_back(sub_.from_coordinates(p));
      return out;
    }
    if (sub_.equals_ambient()) {
      if (r > ball_.radius()) return std::nullopt;
      for (auto idx : ball_.sphere(r)) out.push_back(ball_.element(idx));
      return out;
    }
    const BallIndex& ib = intrinsic_.get();
    if (r > ib.radius()) return std::nullopt;
    for (auto idx : ib.sphere(r)) out.push_back(sub_.embed(ib.element(idx)));
    return out;
  }

 private:
  const BallIndex& ball_;
  const MarkedSubgroup& sub_;
  IntrinsicBall intrinsic_;
};

// Word lengths over Y_m for every member of H ∩ Ball_X(n_max).
struct MuProfile {
  SubgroupPointSet targets;
  std::vector<std::optional<std::size_t>> counts;
  bool capped = false;
  std::size_t explored_depth = 0;  // unreached targets need more than this many letters
};

MuProfile mu_profile(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t m, std::size_t n_max,
                     const MuOptions& opts) {
  require_radius(ball, m, "mu");
  require_radius(ball, n_max, "mu");
  SubgroupPointSet alphabet = subgroup_points(ball, sub, m);
  if (alphabet.only_identity()) {
    throw UndefinedValue("mu(" + std::to_string(m) + ", n) undefined: H ∩ Ball_X(" + std::to_string(m) +
                         ") is trivial");
  }
  MuProfile profile;
  profile.targets = subgroup_points(ball, sub, n_max);
  profile.counts.assign(profile.targets.size(), std::nullopt);

  MuMethod method = opts.method;
  if (method == MuMethod::automatic) method = sub.abelian_rank() ? MuMethod::coin_search : MuMethod::closure;

  if (method == MuMethod::coin_search) {
    if (!sub.abelian_rank()) throw InvalidArgument("coin search needs a free abelian subgroup");
    std::vector<IntPoint> coins;
    std::vector<IntPoint> goals;
    for (const auto& p : alphabet.points) {
      if (p.length > 0) coins.push_back(sub.coordinates(ball.element(p.index)));
    }
    for (const auto& p : profile.targets.points) goals.push_back(sub.coordinates(ball.element(p.index)));
    profile.counts = shortest_coin_counts(coins, goals);
    return profile;
  }

  // Closure: breadth-first search over ambient elements of H with steps in Y_m.
  const auto& model = ball.model();
  std::vector<Element> letters;
  for (const auto& p : alphabet.points) {
    if (p.length > 0) letters.push_back(ball.element(p.index));
  }
  std::unordered_map<Element, std::size_t, ElementHash> goal_index;
  for (std::size_t i = 0; i < profile.targets.size(); ++i) {
    goal_index.emplace(ball.element(profile.targets.points[i].index), i);
  }
  std::size_t remaining = profile.targets.size();
  std::unordered_map<Element, std::size_t, ElementHash> seen;
  std::vector<Element> frontier{model.identity()};
  seen.emplace(model.identity(), 0);
  auto arrive = [&](const Element& g, std::size_t d) {
    auto it = goal_index.find(g);
    if (it != goal_index.end() && !profile.counts[it->second]) {
      profile.counts[it->second] = d;
      --remaining;
    }
  };
  arrive(model.identity(), 0);
  std::size_t depth = 0;
  while (remaining > 0 && !frontier.empty()) {
    ++depth;
    std::vector<Element> next;
    for (const auto& g : frontier) {
      for (const auto& y : letters) {
        Element h = model.multiply(g, y);
        if (seen.contains(h)) continue;
        if (seen.size() >= opts.visit_cap) {
          profile.capped = true;
          profile.explored_depth = depth - 1;
          return profile;
        }
        arrive(h, depth);
        seen.emplace(h, depth);
        next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  profile.explored_depth = depth;
  return profile;
}

Witnessed mu_from_profile(const BallIndex& ball, const MuProfile& profile, std::size_t m, std::size_t n) {
  Witnessed out;
  bool unknown = false;
  for (std::size_t i = 0; i < profile.targets.size(); ++i) {
    const auto& p = profile.targets.points[i];
    if (p.length > n) break;
    const auto& count = profile.counts[i];
    if (!count) {
      if (!profile.capped) {
        throw UndefinedValue("mu(" + std::to_string(m) + ", " + std::to_string(n) +
                             "): Y_m does not generate " + ball.model().format(ball.element(p.index)));
      }
      if (!unknown) {
        unknown = true;
        out.witness = ball.element(p.index);
      }
      out.value = std::max(out.value, profile.explored_depth + 1);
      continue;
    }
    if (!unknown && (*count > out.value || !out.witness)) {
      out.value = *count;
      out.witness = ball.element(p.index);
    } else {
      out.value = std::max(out.value, *count);
    }
  }
  out.exactness = unknown ? Exactness::lower_bound : Exactness::exact;
  return out;
}

std::string describe(const BallIndex& ball, const std::optional<Element>& g) {
  return g ? ball.model().format(*g) : std::string();
}

struct Fit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  Fit f;
  const double denom = n * sxx - sx * sx;
  f.slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

Witnessed delta(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n, const IntrinsicOptions& opts) {
  require_radius(ball, n, "delta");
  IntrinsicLengths lengths(ball, sub, opts);
  Witnessed out;
  for (const auto& p : subgroup_points(ball, sub, n).points) {
    const Element& h = ball.element(p.index);
    auto [len, exactness] = lengths(h);
    if (exactness != Exactness::exact) out.exactness = Exactness::lower_bound;
    if (len > out.value || !out.witness) {
      out.value = std::max(out.value, len);
      out.witness = h;
    }
  }
  return out;
}

Witnessed nabla(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n, const IntrinsicOptions& opts) {
  require_radius(ball, n, "nabla");
  IntrinsicLengths lengths(ball, sub, opts);
  for (std::size_t r = 1; r <= opts.max_radius; ++r) {
    auto sphere = lengths.sphere(r);
    if (!sphere) return Witnessed{r, Exactness::lower_bound, std::nullopt};
    for (const auto& h : *sphere) {
      auto q = word_length(ball, h);
      // Outside the ball certifies |h|_X > radius >= n.
      if (!q.known() || *q.exact > n) return Witnessed{r, Exactness::exact, h};
    }
  }
  return Witnessed{opts.max_radius + 1, Exactness::lower_bound, std::nullopt};
}

Witnessed mu(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t m, std::size_t n, const MuOptions& opts) {
  return mu_from_profile(ball, mu_profile(ball, sub, m, n, opts), m, n);
}

const TableEntry* DistortionTable::find_delta(std::size_t n) const {
  for (const auto& e : delta) {
    if (e.n == n) return &e;
  }
  return nullptr;
}

const TableEntry* DistortionTable::find_nabla(std::size_t n) const {
  for (const auto& e : nabla) {
    if (e.n == n) return &e;
  }
  return nullptr;
}

DistortionTable distortion_table(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t n_max,
                                 const IntrinsicOptions& opts) {
  require_radius(ball, n_max, "distortion_table");
  DistortionTable table;
  IntrinsicLengths lengths(ball, sub, opts);
  const auto points = subgroup_points(ball, sub, n_max);

  // Running maximum of |h|_Y over points sorted by |h|_X.
  Witnessed running;
  std::size_t cursor = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    while (cursor < points.size() && points.points[cursor].length <= n) {
      const Element& h = ball.element(points.points[cursor].index);
      auto [len, exactness] = lengths(h);
      if (exactness != Exactness::exact) running.exactness = Exactness::lower_bound;
      if (len > running.value || !running.witness) {
        running.value = std::max(running.value, len);
        running.witness = h;
      }
      ++cursor;
    }
    table.delta.push_back(TableEntry{n, running.value, running.exactness, describe(ball, running.witness)});
    auto nb = nabla(ball, sub, n, opts);
    table.nabla.push_back(TableEntry{n, nb.value, nb.exactness, describe(ball, nb.witness)});
  }
  return table;
}

const MuCell* MuTable::find(std::size_t m, std::size_t n) const {
  for (const auto& c : cells) {
    if (c.m == m && c.n == n) return &c;
  }
  return nullptr;
}

MuTable mu_table(const BallIndex& ball, const MarkedSubgroup& sub, const std::vector<std::size_t>& ms,
                 const std::vector<std::size_t>& ns, const MuOptions& opts) {
  MuTable table;
  if (ns.empty()) return table;
  const std::size_t n_max = *std::max_element(ns.begin(), ns.end());
  for (auto m : ms) {
    std::optional<MuProfile> profile;
    try {
      profile = mu_profile(ball, sub, m, n_max, opts);
    } catch (const UndefinedValue&) {
      continue;
    }
    for (auto n : ns) {
      auto w = mu_from_profile(ball, *profile, m, n);
      table.cells.push_back(MuCell{m, n, w.value, w.exactness, describe(ball, w.witness)});
    }
  }
  return table;
}

SandwichReport check_sandwich(const DistortionTable& table, const MuTable& mus) {
  SandwichReport report;
  for (const auto& cell : mus.cells) {
    const auto* dn = table.find_delta(cell.n);
    const auto* dm = table.find_delta(cell.m);
    const auto* nm = table.find_nabla(cell.m);
    if (cell.exactness != Exactness::exact || !dn || !dm || dn->exactness != Exactness::exact ||
        dm->exactness != Exactness::exact || dm->value == 0) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    const std::size_t lower = ceil_div(dn->value, dm->value);
    if (lower > cell.value) report.violations.push_back(SandwichViolation{cell.m, cell.n, cell.value, lower, true});
    if (nm && nm->exactness == Exactness::exact && nm->value >= 2) {
      ++report.upper_checked;
      const std::size_t upper = ceil_div(dn->value, nm->value - 1);
      if (cell.value > upper) {
        report.violations.push_back(SandwichViolation{cell.m, cell.n, cell.value, upper, false});
      }
    }
  }
  return report;
}

RatioProbe mu_ratio_probe(const BallIndex& ball, const MarkedSubgroup& sub, std::size_t c, std::size_t i_lo,
                          std::size_t i_hi, const MuOptions& opts) {
  if (c == 0 || i_lo == 0 || i_lo > i_hi) throw InvalidArgument("mu_ratio_probe: need c >= 1 and 1 <= i_lo <= i_hi");
  require_radius(ball, c * i_hi, "mu_ratio_probe");
  RatioProbe probe;
  probe.c = c;
  for (std::size_t i = i_lo; i <= i_hi; ++i) {
    auto w = mu(ball, sub, i, c * i, opts);
    MuCell cell{i, c * i, w.value, w.exactness, describe(ball, w.witness)};
    if (!probe.entries.empty()) {
      const auto prev = probe.entries.back().value;
      probe.non_decreasing = probe.non_decreasing && cell.value >= prev;
      probe.strictly_increasing = probe.strictly_increasing && cell.value > prev;
      probe.constant = probe.constant && cell.value == prev;
    }
    probe.max_value = std::max(probe.max_value, cell.value);
    probe.entries.push_back(std::move(cell));
  }
  return probe;
}

GrowthFit fit_report(const DistortionTable& table) {
  std::vector<double> n_lin, n_log, v_log;
  for (const auto& e : table.delta) {
    if (e.exactness != Exactness::exact || e.n == 0 || e.value == 0) continue;
    n_lin.push_back(static_cast<double>(e.n));
    n_log.push_back(std::log(static_cast<double>(e.n)));
    v_log.push_back(std::log(static_cast<double>(e.value)));
  }
  if (n_lin.size() < 4) throw InvalidArgument("fit_report: need at least 4 exact positive entries");
  const Fit poly = least_squares(n_log, v_log);
  const Fit expo = least_squares(n_lin, v_log);
  GrowthFit out;
  out.samples = n_lin.size();
  out.degree = poly.slope;
  out.degree_residual = poly.residual;
  out.log_base = expo.slope;
  out.base = std::exp(expo.slope);
  out.base_residual = expo.residual;
  out.classification = poly.residual <= expo.residual ? "polynomial" : "exponential";
  return out;
}

RatioBand uniformity_band(const DistortionTable& table) {
  RatioBand band;
  for (const auto& d : table.delta) {
    const auto* nb = table.find_nabla(d.n);
    if (!nb || d.exactness != Exactness::exact || nb->exactness != Exactness::exact || nb->value == 0) continue;
    const double r = static_cast<double>(d.value) / static_cast<double>(nb->value);
    if (band.samples == 0) {
      band.low = band.high = r;
    } else {
      band.low = std::min(band.low, r);
      band.high = std::max(band.high, r);
    }
    ++band.samples;
  }
  return band;
}

}  // namespace subdist
