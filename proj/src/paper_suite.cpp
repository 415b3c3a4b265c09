#include "subdist/paper_suite.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "subdist/cayley_metric.hpp"
#include "subdist/distortion.hpp"
#include "subdist/group_models.hpp"
#include "subdist/length_designer.hpp"
#include "subdist/qc_probe.hpp"
#include "subdist/rpath_metric.hpp"

namespace subdist {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

Element power_of(const GroupModel& g, const std::string& gen, std::int64_t k) { return g.power(g.generator(gen), k); }

Outcome heisenberg_distortion() {
  auto g = heisenberg();
  auto center = marked_subgroup("center", g);
  auto ball = enumerate_ball(g, 16);
  Outcome out;
  std::vector<std::size_t> deltas;
  for (std::size_t n = 1; n <= 10; ++n) {
    auto d = delta(ball, *center, n);
    deltas.push_back(d.value);
    if (d.exactness != Exactness::exact || d.value > n * n) out.pass = false;
  }
  std::vector<std::size_t> lengths;
  for (std::int64_t n = 1; n <= 4; ++n) {
    Word w;
    auto add = [&](const std::string& name, std::int64_t times) {
      for (std::int64_t i = 0; i < times; ++i) w.push_back(g->generator_index(name));
    };
    add("x", n);
    add("y", n);
    add("x^-1", n);
    add("y^-1", n);
    const Element z = power_of(*g, "z", n * n);
    auto q = word_length(ball, z);
    lengths.push_back(q.known() ? *q.exact : 0);
    if (g->evaluate(w) != z || w.size() != static_cast<std::size_t>(4 * n) || !q.known() ||
        *q.exact > static_cast<std::size_t>(4 * n)) {
      out.pass = false;
    }
  }
  out.detail = "Delta(1..10)=" + join(deltas) + "; |z^(n^2)|, n=1..4: " + join(lengths) +
               "; commutator words x^n y^n x^-n y^-n of length 4n";
  return out;
}

Outcome heisenberg_lower() {
  auto g = heisenberg();
  auto ball = enumerate_ball(g, 24);
  Outcome out;
  std::size_t worst_ratio_n = 0, checked = 0;
  for (std::int64_t n = 1; n <= 8; ++n) {
    for (std::int64_t m = 0; m <= n * n; ++m) {
      auto q = extended_length(ball, power_of(*g, "z", m));
      ++checked;
      if (!q.known() || *q.exact > static_cast<std::size_t>(6 * n)) {
        out.pass = false;
        worst_ratio_n = static_cast<std::size_t>(n);
      }
    }
  }
  out.detail = std::to_string(checked) + " pairs (n <= 8, m <= n^2) checked against 6n";
  if (!out.pass) out.detail += "; first failure at n = " + std::to_string(worst_ratio_n);
  return out;
}

Outcome bs_exponential() {
  auto g = bs1p(2);
  auto ball = enumerate_ball(g, 10);
  Outcome out;
  std::vector<std::size_t> pow_lengths;
  for (std::int64_t n = 0; n <= 8; ++n) {
    const Element target = power_of(*g, "a", std::int64_t{1} << n);
    Word w;
    for (std::int64_t i = 0; i < n; ++i) w.push_back(g->generator_index("b^-1"));
    w.push_back(g->generator_index("a"));
    for (std::int64_t i = 0; i < n; ++i) w.push_back(g->generator_index("b"));
    auto q = extended_length(ball, target);
    pow_lengths.push_back(q.known() ? *q.exact : 0);
    if (g->evaluate(w) != target || !q.known() || *q.exact > static_cast<std::size_t>(2 * n + 1)) out.pass = false;
  }
  std::vector<std::size_t> maxima;
  for (std::int64_t n = 1; n <= 6; ++n) {
    std::size_t worst = 0;
    for (std::int64_t k = 0; k < (std::int64_t{1} << n); ++k) {
      auto q = extended_length(ball, power_of(*g, "a", k));
      if (!q.known()) {
        out.pass = false;
        continue;
      }
      worst = std::max(worst, *q.exact);
    }
    maxima.push_back(worst);
    if (worst > static_cast<std::size_t>(3 * n)) out.pass = false;
  }
  out.detail = "|a^(2^n)|, n=0..8: " + join(pow_lengths) + "; max |a^k| for k < 2^n, n=1..6: " + join(maxima);
  return out;
}

Outcome mu_dichotomy() {
  constexpr std::size_t kBound = 16;
  Outcome out;
  auto h = heisenberg();
  auto hb = enumerate_ball(h, 24);
  auto probe = mu_ratio_probe(hb, *marked_subgroup("center", h), 4, 1, 6);
  std::vector<std::size_t> hv;
  for (const auto& e : probe.entries) {
    hv.push_back(e.value);
    if (e.exactness != Exactness::exact) out.pass = false;
  }
  if (probe.max_value > kBound) out.pass = false;

  auto b = bs1p(2);
  auto bb = enumerate_ball(b, 10);
  auto bprobe = mu_ratio_probe(bb, *marked_subgroup("gen-a", b), 2, 2, 5);
  std::vector<std::size_t> bv;
  for (const auto& e : bprobe.entries) {
    bv.push_back(e.value);
    if (e.exactness != Exactness::exact) out.pass = false;
  }
  if (!bprobe.strictly_increasing) out.pass = false;
  out.detail = "heisenberg center mu(i,4i), i=1..6: " + join(hv) + " (bound " + std::to_string(kBound) +
               "); bs1p:2 <a> mu(i,2i), i=2..5: " + join(bv);
  return out;
}

Outcome sandwich() {
  struct Pair {
    std::string group, sub;
    std::size_t radius;
  };
  const std::vector<Pair> pairs = {{"heisenberg", "center", 12},
                                   {"bs1p:2", "gen-a", 12},
                                   {"heisenberg", "full", 6},
                                   {"free-abelian:2", "full", 12}};
  Outcome out;
  for (const auto& p : pairs) {
    auto g = parse_group(p.group);
    auto sub = marked_subgroup(p.sub, g);
    auto ball = enumerate_ball(g, p.radius);
    std::vector<std::size_t> grid;
    for (std::size_t i = 1; i <= p.radius; ++i) grid.push_back(i);
    auto report = check_sandwich(distortion_table(ball, *sub, p.radius), mu_table(ball, *sub, grid, grid));
    if (!report.holds() || report.checked == 0) out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + p.group + "/" + p.sub + ": " + std::to_string(report.checked) +
                  " cells, " + std::to_string(report.upper_checked) + " with upper bound, " +
                  std::to_string(report.violations.size()) + " violations";
  }
  return out;
}

Outcome mu_nu() {
  const std::vector<std::pair<std::string, std::string>> pairs = {{"heisenberg", "center"}, {"bs1p:2", "gen-a"}};
  Outcome out;
  for (const auto& [gname, sname] : pairs) {
    auto g = parse_group(gname);
    auto sub = marked_subgroup(sname, g);
    auto ball = enumerate_ball(g, 12);
    auto space = induced_space(ball, *sub, 6, 6);
    std::size_t compared = 0, mismatches = 0;
    for (std::size_t m = 1; m <= 6; ++m) {
      for (std::size_t n = 1; n <= 6; ++n) {
        auto nv = nu(space, Rational(static_cast<std::int64_t>(m)), Rational(static_cast<std::int64_t>(n)));
        if (nv.exactness != Exactness::exact || !nv.complete()) continue;
        auto mv = mu(ball, *sub, m, n);
        ++compared;
        if (mv.exactness != Exactness::exact || mv.value != nv.value) ++mismatches;
      }
    }
    if (mismatches > 0 || compared == 0) out.pass = false;
    out.detail += (out.detail.empty() ? "" : "; ") + gname + "/" + sname + ": " + std::to_string(compared) +
                  "/36 cells exact, " + std::to_string(mismatches) + " mismatches";
  }
  return out;
}

Outcome ell_builder() {
  const auto f = source_function("sqrt");
  const auto ell = build_ell(f, 4, 10'000);
  const auto cert = certify(ell, &f, 10'000);
  Outcome out;
  out.pass = cert.ok() && cert.plateau_count == 4;
  std::vector<std::size_t> ps(ell.breakpoints().begin(), ell.breakpoints().end());
  out.detail = "p_k=" + join(ps) + "; subadditivity exhaustive to " + std::to_string(cert.exhaustive_limit) + ", " +
               std::to_string(cert.sampled_pairs) + " sampled pairs; domination " +
               (cert.dominates ? "holds" : "fails") + "; " + std::to_string(cert.plateau_count) + " plateaus " +
               (cert.plateaus_hold ? "constant" : "broken");
  return out;
}

Outcome model_dichotomy() {
  Outcome out;
  AbstractDistortedLine power(power_length(2));
  for (std::uint64_t m = 1; m <= 100; ++m) {
    if (power.delta(m) != m * m) out.pass = false;
  }
  std::size_t worst = 0;
  for (std::uint64_t i = 1; i <= 50; ++i) worst = std::max<std::size_t>(worst, power.mu(i, 4 * i));
  if (worst > 16) out.pass = false;

  const auto f = source_function("sqrt");
  AbstractDistortedLine built(build_ell(f, 4, 10'000));
  std::vector<std::size_t> diag;
  const auto& ps = built.ell().breakpoints();
  for (std::size_t k = 2; k <= ps.size(); ++k) {
    const std::uint64_t level = built.ell()(static_cast<std::int64_t>(ps[k - 1]));
    const std::uint64_t v = built.mu(level - 1, level);
    diag.push_back(v);
    if (v < k) out.pass = false;
  }
  out.detail = "power:2 Delta(m)=m^2 for m<=100, max mu(i,4i) over i<=50 = " + std::to_string(worst) +
               "; sqrt-built mu(ell(p_k)-1, ell(p_k)), k=2..4: " + join(diag);
  return out;
}

Outcome quasi_convexity() {
  auto g = free_abelian(2);
  auto ball = enumerate_ball(g, 12);
  auto diag = marked_subgroup("diagonal", g);
  auto axis = marked_subgroup("gen-a", g);
  Outcome out;
  const auto drows = quasiconvexity_report(ball, *diag, 12, 6);
  std::vector<std::size_t> m2k;
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto& row = drows[2 * k - 1];
    m2k.push_back(row.max_excursion);
    if (row.max_excursion < k) out.pass = false;
  }
  std::size_t axis_max = 0;
  for (const auto& row : quasiconvexity_report(ball, *axis, 12, 6)) {
    axis_max = std::max(axis_max, row.max_excursion);
    if (row.exactness != Exactness::exact) out.pass = false;
  }
  if (axis_max != 0) out.pass = false;

  std::vector<std::size_t> stair;
  const QRational lambda(3), c(0);
  for (std::int64_t k = 1; k <= 6; ++k) {
    Word w;
    for (std::int64_t i = 0; i < k; ++i) {
      w.push_back(g->generator_index("a"));
      w.push_back(g->generator_index("b"));
    }
    for (std::int64_t i = 0; i < k; ++i) {
      w.push_back(g->generator_index("a"));
      w.push_back(g->generator_index("b^-1"));
    }
    const auto path = path_from_word(*g, g->identity(), w);
    std::size_t e = 0;
    for (const auto& v : path) e = std::max(e, distance_to_subgroup(ball, *axis, v, 6).value);
    stair.push_back(e);
    const bool ends_ok = path.back() == power_of(*g, "a", 2 * k);
    if (!ends_ok || !check_quasi_geodesic(ball, path, lambda, c).ok || e < static_cast<std::size_t>(k)) {
      out.pass = false;
    }
  }
  out.detail = "diagonal M(2k), k=1..6: " + join(m2k) + "; <a> max M(n<=12) = " + std::to_string(axis_max) +
               "; (3,0) staircase excursions, k=1..6: " + join(stair);
  return out;
}

// Lengths by evaluating every word of length <= radius.
std::unordered_map<Element, std::size_t, ElementHash> word_closure(const GroupModel& g, std::size_t radius) {
  std::unordered_map<Element, std::size_t, ElementHash> best;
  std::function<void(const Element&, std::size_t)> walk = [&](const Element& e, std::size_t len) {
    auto [it, fresh] = best.emplace(e, len);
    if (!fresh && it->second > len) it->second = len;
    if (len == radius) return;
    for (const auto& gen : g.generators()) walk(g.multiply(e, gen.element), len + 1);
  };
  walk(g.identity(), 0);
  return best;
}

Outcome oracle_equivalence() {
  Outcome out;
  const std::vector<std::pair<std::string, std::string>> pairs = {{"heisenberg", "center"},
                                                                  {"bs1p:2", "gen-a"},
                                                                  {"product(free-abelian:1, bs1p:2)", "product-left"},
                                                                  {"free-abelian:2", "diagonal"},
                                                                  {"free-abelian:2", "gen-a"}};
  std::size_t cells = 0, mismatches = 0;
  const std::vector<std::size_t> grid = {1, 2, 3, 4};
  for (const auto& [gname, sname] : pairs) {
    auto g = parse_group(gname);
    auto sub = marked_subgroup(sname, g);
    auto ball = enumerate_ball(g, 4);
    auto coin = mu_table(ball, *sub, grid, grid, MuOptions{MuMethod::coin_search, 2'000'000});
    auto closure = mu_table(ball, *sub, grid, grid, MuOptions{MuMethod::closure, 2'000'000});
    if (coin.cells.size() != closure.cells.size()) ++mismatches;
    for (const auto& c : coin.cells) {
      ++cells;
      const auto* o = closure.find(c.m, c.n);
      if (!o || o->value != c.value || o->exactness != Exactness::exact || c.exactness != Exactness::exact) {
        ++mismatches;
      }
    }
  }
  const std::vector<std::string> builtins = {"free-abelian:1", "free-abelian:2", "free-abelian:3", "free:2",
                                             "heisenberg",     "bs1p:2",         "bs1p:3",
                                             "product(free-abelian:1, bs1p:2)"};
  std::size_t elements = 0, length_mismatches = 0;
  for (const auto& name : builtins) {
    auto g = parse_group(name);
    auto ball = enumerate_ball(g, 4);
    auto closure = word_closure(*g, 4);
    if (closure.size() != ball.size()) ++length_mismatches;
    for (const auto& [e, len] : closure) {
      ++elements;
      auto idx = ball.find(e);
      if (!idx || ball.length(*idx) != len) ++length_mismatches;
    }
  }
  out.pass = mismatches == 0 && length_mismatches == 0;
  out.detail = std::to_string(cells) + " mu cells compared (" + std::to_string(mismatches) + " mismatches); " +
               std::to_string(elements) + " ball elements over " + std::to_string(builtins.size()) +
               " builtins compared (" + std::to_string(length_mismatches) + " mismatches)";
  return out;
}

}  // namespace

std::vector<SuiteCheck> run_paper_suite(const SuiteOptions& opts) {
  struct Entry {
    int id;
    const char* title;
    std::size_t radius;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "heisenberg center distortion Delta(n) <= n^2, |z^(n^2)| <= 4n", 16, heisenberg_distortion},
      {2, "heisenberg |z^m| <= 6n for m <= n^2", 24, heisenberg_lower},
      {3, "bs1p:2 |a^(2^n)| <= 2n+1 and |a^k| <= 3n for k < 2^n", 10, bs_exponential},
      {4, "mu(i,4i) bounded in heisenberg, mu(i,2i) increasing in bs1p:2", 24, mu_dichotomy},
      {5, "sandwich ceil(Delta(n)/Delta(m)) <= mu(m,n) <= ceil(Delta(n)/(nabla(m)-1))", 12, sandwich},
      {6, "nu on the induced subgroup space equals mu", 12, mu_nu},
      {7, "length builder for ceil(sqrt r): subadditive, dominating, four plateaus", 0, ell_builder},
      {8, "abstract line dichotomy: power:2 bounded, sqrt-built unbounded", 0, model_dichotomy},
      {9, "quasi-convexity probes in free-abelian:2", 12, quasi_convexity},
      {10, "closure mu equals coin mu; ball lengths equal word closure", 4, oracle_equivalence},
  };
  std::vector<SuiteCheck> checks;
  for (const auto& e : entries) {
    SuiteCheck c{e.id, e.title, e.radius, {}, {}, 0};
    if (opts.radius_limit && e.radius > *opts.radius_limit) {
      c.status = "skipped: insufficient radius";
      c.detail = "needs radius " + std::to_string(e.radius) + ", limit " + std::to_string(*opts.radius_limit);
      checks.push_back(std::move(c));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = e.run();
      c.status = o.pass ? "pass" : "fail";
      c.detail = o.detail;
    } catch (const std::exception& ex) {
      c.status = "fail";
      c.detail = std::string("error: ") + ex.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checks.push_back(std::move(c));
  }
  return checks;
}

std::string format_suite_report(const std::vector<SuiteCheck>& checks, bool with_timings) {
  std::ostringstream out;
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& c : checks) {
    out << "[" << c.status << "] " << c.id << ". " << c.title << " :: " << c.detail;
    if (with_timings && c.status.rfind("skipped", 0) != 0) {
      out << " (" << std::fixed;
      out.precision(2);
      out << c.seconds << " s)";
    }
    out << "\n";
    if (c.status == "pass") {
      ++passed;
    } else if (c.status == "fail") {
      ++failed;
    } else {
      ++skipped;
    }
  }
  out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  return out.str();
}

}  // namespace subdist
