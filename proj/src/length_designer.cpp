#include "subdist/length_designer.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "subdist/coin_search.hpp"
#include "subdist/identifiers.hpp"

namespace subdist {
namespace {

std::uint64_t ceil_div(const BigInt& a, const BigInt& b) {
  return static_cast<std::uint64_t>((a + b - 1) / b);
}

std::uint64_t log_scaled_base(std::uint64_t s) {
  const auto b = static_cast<std::uint64_t>(std::bit_width(s) - 1);
  return (s + b) / (b + 1);
}

}  // namespace

std::uint64_t ceil_root(std::uint64_t z, unsigned k) {
  if (k == 0) throw InvalidArgument("ceil_root: k must be positive");
  if (z <= 1 || k == 1) return z;
  // m^k >= z, saturating once the product passes z.
  auto reaches = [&](std::uint64_t m) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= m;
      if (acc >= z) return true;
    }
    return false;
  };
  std::uint64_t lo = 1, hi = z;  // reaches(hi) holds, reaches(lo) may not
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (reaches(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

SourceFunction source_function(const std::string& name) {
  const auto id = parse_identifier(name);
  if (!id.args.empty()) throw InvalidArgument("unknown source function '" + name + "'");
  if (id.head == "sqrt" && id.params.empty()) {
    return SourceFunction{"sqrt", [](std::uint64_t r) { return ceil_root(r, 2); }};
  }
  if (id.head == "log-scaled" && id.params.empty()) {
    // The block-wise formula is increasing inside each block [2^b, 2^(b+1)),
    // so the running max is the larger of the current value and the value at
    // the end of the previous block.
    return SourceFunction{"log-scaled", [](std::uint64_t r) -> std::uint64_t {
                            if (r <= 1) return r;
                            const std::uint64_t block_start = std::uint64_t{1} << (std::bit_width(r) - 1);
                            return std::max(log_scaled_base(r), log_scaled_base(block_start - 1));
                          }};
  }
  if (id.head == "power" && id.params.size() == 1 && id.params[0] >= 1) {
    const auto k = static_cast<unsigned>(id.params[0]);
    return SourceFunction{id.to_string(), [k](std::uint64_t r) { return ceil_root(r, k); }};
  }
  throw InvalidArgument("unknown source function '" + name + "' (expected sqrt, log-scaled or power:k)");
}

PrescribedLengthFunction::PrescribedLengthFunction(std::string name, std::function<std::uint64_t(std::uint64_t)> eval,
                                                   std::optional<std::uint64_t> grid_max,
                                                   std::vector<std::uint64_t> breakpoints,
                                                   std::vector<Plateau> plateaus, std::string source)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      grid_max_(grid_max),
      breakpoints_(std::move(breakpoints)),
      plateaus_(std::move(plateaus)),
      source_(std::move(source)) {}

std::uint64_t PrescribedLengthFunction::operator()(std::int64_t z) const {
  const std::uint64_t a = z < 0 ? static_cast<std::uint64_t>(-(z + 1)) + 1 : static_cast<std::uint64_t>(z);
  if (grid_max_ && a > *grid_max_) {
    throw InvalidArgument(name_ + ": |z| = " + std::to_string(a) + " is outside the grid 0.." +
                          std::to_string(*grid_max_));
  }
  return eval_(a);
}

PrescribedLengthFunction build_ell(const SourceFunction& f, std::size_t k_max, std::uint64_t grid_max) {
  if (k_max == 0) throw InvalidArgument("build_ell: k_max must be positive");
  if (grid_max < 1) throw InvalidArgument("build_ell: grid_max must be positive");

  std::vector<std::uint64_t> fv(grid_max + 1, 0);
  for (std::uint64_t r = 1; r <= grid_max; ++r) {
    fv[r] = f.eval(r);
    if (fv[r] < 1 || fv[r] > r) {
      throw InvalidArgument("build_ell: f(" + std::to_string(r) + ") = " + std::to_string(fv[r]) +
                            " is outside [1, r]");
    }
    if (fv[r] < fv[r - 1]) {
      throw InvalidArgument("build_ell: f decreases at r = " + std::to_string(r));
    }
  }

  auto table = std::make_shared<std::vector<std::uint64_t>>(grid_max + 1, 0);
  auto& ell = *table;
  ell[1] = 1;
  std::vector<std::uint64_t> breakpoints{1};
  std::vector<Plateau> plateaus{Plateau{1, 1, 1, 1}};
  std::uint64_t filled = 1;  // ell is defined on 0..k p_k
  BigInt fact = 1;           // k!

  for (std::size_t k = 1; k < k_max; ++k) {
    const BigInt next_fact = fact * (k + 1);
    std::uint64_t violating = 0;
    for (std::uint64_t r = grid_max; r >= 1; --r) {
      if (BigInt(fv[r]) * next_fact > r) {
        violating = r;
        break;
      }
    }
    std::uint64_t p = std::max<std::uint64_t>(violating / (k + 1) + 1, filled);
    if ((k + 1) * p > grid_max) {
      throw InvalidArgument("build_ell: plateau " + std::to_string(k + 1) + " needs [" + std::to_string(p) + ", " +
                            std::to_string((k + 1) * p) + "] but grid_max is " + std::to_string(grid_max));
    }
    for (std::uint64_t s = filled + 1; s <= p; ++s) ell[s] = ceil_div(s, fact);
    const std::uint64_t value = ceil_div(p, fact);
    for (std::uint64_t s = p; s <= (k + 1) * p; ++s) ell[s] = value;
    breakpoints.push_back(p);
    plateaus.push_back(Plateau{k + 1, p, (k + 1) * p, value});
    filled = (k + 1) * p;
    fact = next_fact;
  }
  for (std::uint64_t s = filled + 1; s <= grid_max; ++s) ell[s] = ceil_div(s, fact);

  return PrescribedLengthFunction(
      "ell[" + f.name + ", k_max=" + std::to_string(k_max) + "]",
      [table](std::uint64_t z) { return (*table)[z]; }, grid_max, std::move(breakpoints), std::move(plateaus), f.name);
}

PrescribedLengthFunction power_length(unsigned k) {
  if (k == 0) throw InvalidArgument("power_length: k must be positive");
  return PrescribedLengthFunction("power:" + std::to_string(k), [k](std::uint64_t z) { return ceil_root(z, k); },
                                  std::nullopt);
}

LengthCertificate certify(const PrescribedLengthFunction& ell, const SourceFunction* f, std::uint64_t grid_max,
                          std::uint64_t exhaustive_limit, std::size_t samples, std::uint64_t seed) {
  if (ell.grid_max() && grid_max > *ell.grid_max()) {
    throw InvalidArgument("certify: grid_max exceeds the function's grid");
  }
  LengthCertificate cert;
  cert.grid_max = grid_max;
  std::vector<std::uint64_t> v(grid_max + 1);
  for (std::uint64_t s = 0; s <= grid_max; ++s) v[s] = ell(static_cast<std::int64_t>(s));

  cert.monotone = v[0] == 0;
  for (std::uint64_t s = 1; s <= grid_max && cert.monotone; ++s) {
    if (v[s] < 1 || v[s] < v[s - 1]) cert.monotone = false;
  }

  // With ell non-decreasing on N, pairs of opposite sign follow from
  // ell(|m - n|) <= ell(max(|m|, |n|)), so positive pairs suffice.
  auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
    if (cert.subadditive && v[a] + v[b] < v[a + b]) {
      cert.subadditive = false;
      cert.subadditivity_violation = std::make_pair(a, b);
    }
  };
  cert.exhaustive_limit = std::min(exhaustive_limit, grid_max);
  for (std::uint64_t a = 1; 2 * a <= cert.exhaustive_limit && cert.subadditive; ++a) {
    for (std::uint64_t b = a; a + b <= cert.exhaustive_limit; ++b) check_pair(a, b);
  }
  if (grid_max > cert.exhaustive_limit + 1) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> total(cert.exhaustive_limit + 1, grid_max);
    for (std::size_t i = 0; i < samples && cert.subadditive; ++i) {
      const std::uint64_t s = total(rng);
      const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(1, s - 1)(rng);
      check_pair(a, s - a);
      ++cert.sampled_pairs;
    }
  }

  if (f) {
    for (std::uint64_t s = 1; s <= grid_max; ++s) {
      if (v[s] < f->eval(s)) {
        cert.dominates = false;
        cert.domination_violation = s;
        break;
      }
    }
  }

  for (const auto& p : ell.plateaus()) {
    ++cert.plateau_count;
    if (p.hi > grid_max) {
      cert.plateaus_hold = false;
      continue;
    }
    for (std::uint64_t s = p.lo; s <= p.hi; ++s) {
      if (v[s] != p.value) {
        cert.plateaus_hold = false;
        break;
      }
    }
  }
  return cert;
}

std::uint64_t AbstractDistortedLine::first_above(std::uint64_t n) const {
  auto above = [&](std::uint64_t z) { return ell_(static_cast<std::int64_t>(z)) > n; };
  std::uint64_t hi;
  if (auto g = ell_.grid_max()) {
    if (!above(*g)) {
      throw InvalidArgument(ell_.name() + ": grid exhausted (ell <= " + std::to_string(n) + " on the whole grid)");
    }
    hi = *g;
  } else {
    hi = 1;
    while (!above(hi)) {
      if (hi > (std::uint64_t{1} << 61)) throw InvalidArgument(ell_.name() + ": search range exhausted");
      hi *= 2;
    }
  }
  std::uint64_t lo = 0;  // above(lo) is false: ell(0) = 0 <= n
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (above(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::uint64_t AbstractDistortedLine::delta(std::uint64_t n) const { return first_above(n) - 1; }

std::uint64_t AbstractDistortedLine::nabla(std::uint64_t n) const { return first_above(n); }

std::uint64_t AbstractDistortedLine::mu(std::uint64_t m, std::uint64_t n) const {
  const std::uint64_t reach = delta(m);
  if (reach == 0) throw UndefinedValue("abstract mu: no nonzero z with ell(z) <= " + std::to_string(m));
  const std::uint64_t top = delta(n);
  std::vector<std::int64_t> coins;
  for (std::uint64_t y = 1; y <= reach; ++y) {
    if (ell_(static_cast<std::int64_t>(y)) <= m) coins.push_back(static_cast<std::int64_t>(y));
  }
  std::vector<std::int64_t> targets;
  for (std::uint64_t z = 0; z <= top; ++z) {
    if (ell_(static_cast<std::int64_t>(z)) <= n) targets.push_back(static_cast<std::int64_t>(z));
  }
  std::uint64_t best = 0;
  for (const auto& c : shortest_coin_counts(coins, targets)) best = std::max<std::uint64_t>(best, c.value());
  return best;
}

DistortionTable abstract_table(const AbstractDistortedLine& line, std::size_t n_max) {
  DistortionTable table;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto d = line.delta(n);
    const auto nb = line.nabla(n);
    table.delta.push_back(TableEntry{n, d, Exactness::exact, std::to_string(d)});
    table.nabla.push_back(TableEntry{n, nb, Exactness::exact, std::to_string(nb)});
  }
  return table;
}

MuTable abstract_mu_table(const AbstractDistortedLine& line, const std::vector<std::size_t>& ms,
                          const std::vector<std::size_t>& ns) {
  MuTable table;
  for (auto m : ms) {
    if (line.delta(m) == 0) continue;
    for (auto n : ns) table.cells.push_back(MuCell{m, n, line.mu(m, n), Exactness::exact, {}});
  }
  return table;
}

}  // namespace subdist
