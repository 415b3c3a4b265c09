// Acceptance gate: one line per criterion, nonzero exit if any fails or runs
// past its time budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "oracles.hpp"
#include "subdist/cayley_metric.hpp"
#include "subdist/distortion.hpp"
#include "subdist/group_models.hpp"
#include "subdist/length_designer.hpp"
#include "subdist/qc_probe.hpp"
#include "subdist/rpath_metric.hpp"

using namespace subdist;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "FAILED: " << what << "; ";
      pass = false;
    }
  }
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::map<long, int> center_lengths(const std::map<oracle::H3, int>& lens) {
  std::map<long, int> out;
  for (const auto& [t, d] : lens) {
    if (std::get<0>(t) == 0 && std::get<2>(t) == 0) out[std::get<1>(t)] = d;
  }
  return out;
}

std::map<long, int> gen_a_lengths(const std::map<oracle::Aff, int>& lens) {
  std::map<long, int> out;
  for (const auto& [a, d] : lens) {
    if (a.first == 0 && a.second.denominator() == 1) out[a.second.numerator()] = d;
  }
  return out;
}

void c1(Verdict& v) {
  auto g = heisenberg();
  auto ball = enumerate_ball(g, 16);
  auto center = marked_subgroup("center", g);
  const auto olens = center_lengths(oracle::heisenberg_lengths(16));
  std::vector<std::size_t> deltas;
  for (std::size_t n = 1; n <= 10; ++n) {
    auto d = delta(ball, *center, n);
    long oracle_max = 0;
    for (const auto& [k, len] : olens)
      if (len <= static_cast<int>(n)) oracle_max = std::max(oracle_max, std::labs(k));
    deltas.push_back(d.value);
    v.require(d.exactness == Exactness::exact, "Delta(" + std::to_string(n) + ") exact");
    v.require(d.value == static_cast<std::size_t>(oracle_max), "Delta(" + std::to_string(n) + ") matches oracle");
    v.require(d.value <= n * n, "Delta(" + std::to_string(n) + ") <= n^2");
  }
  std::vector<std::size_t> words;
  for (long n = 1; n <= 4; ++n) {
    // x^n y^n x^-n y^-n multiplied out on raw tuples.
    oracle::H3 w{0, 0, 0};
    for (long i = 0; i < n; ++i) w = oracle::h3_mul(w, {1, 0, 0});
    for (long i = 0; i < n; ++i) w = oracle::h3_mul(w, {0, 0, 1});
    for (long i = 0; i < n; ++i) w = oracle::h3_mul(w, {-1, 0, 0});
    for (long i = 0; i < n; ++i) w = oracle::h3_mul(w, {0, 0, -1});
    v.require(w == oracle::H3{0, n * n, 0}, "commutator word equals z^(n^2)");
    auto q = word_length(ball, g->power(g->generator("z"), n * n));
    v.require(q.known() && *q.exact <= static_cast<std::size_t>(4 * n), "|z^(n^2)| <= 4n");
    words.push_back(q.known() ? *q.exact : 0);
  }
  v.detail << "Delta(1..10)=" << join(deltas) << "; |z^(n^2)|, n=1..4: " << join(words);
}

void c2(Verdict& v) {
  auto g = heisenberg();
  // |z^64| = 32, so radius 16 plus midpoint extension is enough.
  auto ball = enumerate_ball(g, 16);
  const auto olens = center_lengths(oracle::heisenberg_lengths(32));
  std::size_t checked = 0;
  std::vector<std::size_t> worst;
  for (long n = 1; n <= 8; ++n) {
    std::size_t w = 0;
    for (long m = 0; m <= n * n; ++m) {
      auto q = extended_length(ball, g->power(g->generator("z"), m));
      auto it = olens.find(m);
      v.require(q.known() && it != olens.end(), "|z^" + std::to_string(m) + "| resolved");
      if (!q.known() || it == olens.end()) continue;
      v.require(*q.exact == static_cast<std::size_t>(it->second), "|z^" + std::to_string(m) + "| matches oracle");
      v.require(*q.exact <= static_cast<std::size_t>(6 * n), "|z^m| <= 6n at n=" + std::to_string(n));
      w = std::max(w, *q.exact);
      ++checked;
    }
    worst.push_back(w);
  }
  v.detail << checked << " (n, m) pairs; max |z^m| over m <= n^2, n=1..8: " << join(worst) << " vs 6n";
}

void c3(Verdict& v) {
  auto g = bs1p(2);
  auto ball = enumerate_ball(g, 10);
  const auto olens = gen_a_lengths(oracle::bs2_lengths(18));
  std::vector<std::size_t> pows;
  for (int n = 0; n <= 8; ++n) {
    const long k = 1L << n;
    auto q = extended_length(ball, g->power(g->generator("a"), k));
    // b^-n a b^n
    Word w(n, g->generator_index("b^-1"));
    w.push_back(g->generator_index("a"));
    w.insert(w.end(), n, g->generator_index("b"));
    v.require(g->evaluate(w) == g->power(g->generator("a"), k), "b^-n a b^n = a^(2^n)");
    v.require(q.known() && *q.exact <= static_cast<std::size_t>(2 * n + 1), "|a^(2^n)| <= 2n+1");
    v.require(q.known() && olens.count(k) && *q.exact == static_cast<std::size_t>(olens.at(k)),
              "|a^(2^n)| matches oracle");
    pows.push_back(q.known() ? *q.exact : 0);
  }
  std::vector<std::size_t> maxima;
  for (int n = 1; n <= 6; ++n) {
    std::size_t worst = 0;
    for (long k = 0; k < (1L << n); ++k) {
      auto q = extended_length(ball, g->power(g->generator("a"), k));
      v.require(q.known() && olens.count(k) && *q.exact == static_cast<std::size_t>(olens.at(k)),
                "|a^" + std::to_string(k) + "| matches oracle");
      if (q.known()) worst = std::max(worst, *q.exact);
    }
    v.require(worst <= static_cast<std::size_t>(3 * n), "|a^k| <= 3n for k < 2^n");
    maxima.push_back(worst);
  }
  v.detail << "|a^(2^n)|, n=0..8: " << join(pows) << "; max |a^k|, k<2^n, n=1..6: " << join(maxima);
}

void c4(Verdict& v) {
  constexpr std::size_t kBound = 16;
  auto h = heisenberg();
  auto hb = enumerate_ball(h, 24);
  const auto hl = center_lengths(oracle::heisenberg_lengths(24));
  auto hp = mu_ratio_probe(hb, *marked_subgroup("center", h), 4, 1, 6);
  std::vector<std::size_t> hv;
  for (const auto& e : hp.entries) {
    v.require(e.exactness == Exactness::exact, "heisenberg mu exact");
    v.require(e.value == static_cast<std::size_t>(oracle::cyclic_mu(hl, static_cast<int>(e.m), static_cast<int>(e.n))),
              "heisenberg mu(i,4i) matches oracle");
    hv.push_back(e.value);
  }
  v.require(hp.max_value <= kBound, "heisenberg mu(i,4i) <= 16");

  auto b = bs1p(2);
  auto bb = enumerate_ball(b, 10);
  const auto bl = gen_a_lengths(oracle::bs2_lengths(10));
  auto bp = mu_ratio_probe(bb, *marked_subgroup("gen-a", b), 2, 2, 5);
  std::vector<std::size_t> bv;
  for (const auto& e : bp.entries) {
    v.require(e.exactness == Exactness::exact, "bs mu exact");
    v.require(e.value == static_cast<std::size_t>(oracle::cyclic_mu(bl, static_cast<int>(e.m), static_cast<int>(e.n))),
              "bs mu(i,2i) matches oracle");
    bv.push_back(e.value);
  }
  v.require(bp.strictly_increasing, "bs mu(i,2i) strictly increasing");
  v.detail << "heisenberg center mu(i,4i), i=1..6: " << join(hv) << " (bound " << kBound
           << "); bs1p:2 <a> mu(i,2i), i=2..5: " << join(bv);
}

void c5(Verdict& v) {
  struct Pair {
    std::string group, sub;
    std::size_t radius;
  };
  for (const auto& p : {Pair{"heisenberg", "center", 12}, Pair{"bs1p:2", "gen-a", 12},
                        Pair{"heisenberg", "full", 6}, Pair{"free-abelian:2", "full", 12}}) {
    auto g = parse_group(p.group);
    auto sub = marked_subgroup(p.sub, g);
    auto ball = enumerate_ball(g, p.radius);
    std::vector<std::size_t> grid;
    for (std::size_t i = 1; i <= p.radius; ++i) grid.push_back(i);
    auto report = check_sandwich(distortion_table(ball, *sub, p.radius), mu_table(ball, *sub, grid, grid));
    v.require(report.holds(), p.group + "/" + p.sub + " sandwich");
    v.require(report.checked == p.radius * p.radius, p.group + "/" + p.sub + " every cell exact");
    v.detail << p.group << "/" << p.sub << ": " << report.checked << " cells, " << report.violations.size()
             << " violations; ";
  }
}

void c6(Verdict& v) {
  for (const auto& [gname, sname] : {std::pair<std::string, std::string>{"heisenberg", "center"}, {"bs1p:2", "gen-a"}}) {
    auto g = parse_group(gname);
    auto sub = marked_subgroup(sname, g);
    auto ball = enumerate_ball(g, 12);
    auto space = induced_space(ball, *sub, 6, 6);
    std::size_t exact = 0;
    for (std::size_t m = 1; m <= 6; ++m) {
      for (std::size_t n = 1; n <= 6; ++n) {
        auto nv = nu(space, Rational(static_cast<std::int64_t>(m)), Rational(static_cast<std::int64_t>(n)));
        if (nv.exactness != Exactness::exact || !nv.complete()) continue;
        ++exact;
        auto mv = mu(ball, *sub, m, n);
        v.require(mv.value == nv.value, gname + " mu(" + std::to_string(m) + "," + std::to_string(n) + ") = nu");
      }
    }
    v.require(exact == 36, gname + " all 36 cells exact under slack");
    v.detail << gname << "/" << sname << ": " << exact << "/36 exact cells; ";
  }
}

void c7(Verdict& v) {
  const auto f = source_function("sqrt");
  const auto ell = build_ell(f, 4, 10'000);
  const auto cert = certify(ell, &f, 10'000, 3000);
  v.require(cert.subadditive && cert.exhaustive_limit == 3000 && cert.sampled_pairs > 0, "subadditivity certificate");
  v.require(cert.dominates, "domination certificate");
  v.require(cert.plateaus_hold && cert.plateau_count == 4, "four plateaus");
  // Independent recheck of domination and plateau constancy.
  for (std::uint64_t r = 1; r <= 10'000; ++r) {
    std::uint64_t s = 0;
    while (s * s < r) ++s;
    if (ell(static_cast<std::int64_t>(r)) < s) {
      v.require(false, "ell >= ceil(sqrt r) at r=" + std::to_string(r));
      break;
    }
  }
  for (const auto& p : ell.plateaus())
    for (std::uint64_t s = p.lo; s <= p.hi; ++s)
      v.require(ell(static_cast<std::int64_t>(s)) == p.value, "plateau " + std::to_string(p.k) + " constant");
  std::vector<std::size_t> ps(ell.breakpoints().begin(), ell.breakpoints().end());
  v.detail << "p_k=" << join(ps) << "; subadditive (exhaustive to " << cert.exhaustive_limit << ", "
           << cert.sampled_pairs << " sampled); dominates; " << cert.plateau_count << " plateaus";
}

void c8(Verdict& v) {
  AbstractDistortedLine power(power_length(2));
  for (std::uint64_t m = 1; m <= 100; ++m) v.require(power.delta(m) == m * m, "Delta_abs(m) = m^2");
  std::size_t worst = 0;
  for (std::uint64_t i = 1; i <= 50; ++i) worst = std::max<std::size_t>(worst, power.mu(i, 4 * i));
  v.require(worst <= 16, "mu_abs(i,4i) <= 16");
  // Small cases against a plain coin BFS.
  for (std::uint64_t i = 1; i <= 5; ++i) {
    std::vector<long> coins;
    for (long z = 1; z <= static_cast<long>(i * i); ++z) coins.push_back(z);
    const long top = static_cast<long>(16 * i * i);
    auto counts = oracle::coin_counts(coins, top);
    int best = 0;
    for (long z = -top; z <= top; ++z) best = std::max(best, counts.at(z));
    v.require(power.mu(i, 4 * i) == static_cast<std::uint64_t>(best), "mu_abs(i,4i) matches coin oracle");
  }
  AbstractDistortedLine built(build_ell(source_function("sqrt"), 4, 10'000));
  std::vector<std::size_t> diag;
  const auto& ps = built.ell().breakpoints();
  for (std::size_t k = 2; k <= ps.size(); ++k) {
    const auto level = built.ell()(static_cast<std::int64_t>(ps[k - 1]));
    const auto val = built.mu(level - 1, level);
    diag.push_back(val);
    v.require(val >= k, "built-line diagonal >= k");
  }
  v.detail << "power:2 Delta(m)=m^2 for m<=100; max mu(i,4i), i<=50: " << worst
           << "; sqrt-built mu(ell(p_k)-1, ell(p_k)), k=2..4: " << join(diag);
}

void c9(Verdict& v) {
  auto g = free_abelian(2);
  auto ball = enumerate_ball(g, 12);
  auto diag = marked_subgroup("diagonal", g);
  auto axis = marked_subgroup("gen-a", g);
  const auto drows = quasiconvexity_report(ball, *diag, 12, 6);
  std::vector<std::size_t> m2k;
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto& row = drows.at(2 * k - 1);
    v.require(row.max_excursion >= k, "diagonal M(2k) >= k");
    m2k.push_back(row.max_excursion);
  }
  for (const auto& row : quasiconvexity_report(ball, *axis, 12, 6)) {
    v.require(row.max_excursion == 0 && row.exactness == Exactness::exact, "<a> M(n) = 0");
  }
  std::vector<std::size_t> stair;
  for (std::int64_t k = 1; k <= 6; ++k) {
    Word w;
    for (std::int64_t i = 0; i < k; ++i) w.insert(w.end(), {g->generator_index("a"), g->generator_index("b")});
    for (std::int64_t i = 0; i < k; ++i) w.insert(w.end(), {g->generator_index("a"), g->generator_index("b^-1")});
    const auto path = path_from_word(*g, g->identity(), w);
    v.require(path.back() == g->power(g->generator("a"), 2 * k), "staircase ends at a^(2k)");
    v.require(check_quasi_geodesic(ball, path, QRational(3), QRational(0)).ok, "staircase is (3,0)-quasi-geodesic");
    // In Z^2 the distance to <a> is |y|.
    std::int64_t reach = 0;
    for (const auto& p : path) reach = std::max(reach, std::abs(p.as<IntVector>().coords[1]));
    std::size_t e = 0;
    for (const auto& p : path) e = std::max(e, distance_to_subgroup(ball, *axis, p, 6).value);
    v.require(e == static_cast<std::size_t>(reach), "excursion equals max |y|");
    v.require(e >= static_cast<std::size_t>(k), "staircase excursion >= k");
    stair.push_back(e);
  }
  v.detail << "diagonal M(2k), k=1..6: " << join(m2k) << "; <a> M(n<=12) = 0; (3,0) staircase excursions: "
           << join(stair);
}

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

void c10(Verdict& v) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"heisenberg", "center"},
      {"bs1p:2", "gen-a"},
      {"product(free-abelian:1, bs1p:2)", "product-left"},
      {"free-abelian:2", "diagonal"},
      {"free-abelian:2", "gen-a"}};
  const std::vector<std::size_t> grid = {1, 2, 3, 4};
  std::size_t cells = 0;
  for (const auto& [gname, sname] : pairs) {
    auto g = parse_group(gname);
    auto sub = marked_subgroup(sname, g);
    auto ball = enumerate_ball(g, 4);
    auto coin = mu_table(ball, *sub, grid, grid, {MuMethod::coin_search});
    auto closure = mu_table(ball, *sub, grid, grid, {MuMethod::closure});
    v.require(coin.cells.size() == closure.cells.size(), gname + " same defined cells");
    for (const auto& c : coin.cells) {
      const auto* o = closure.find(c.m, c.n);
      v.require(o && o->value == c.value && o->exactness == Exactness::exact && c.exactness == Exactness::exact,
                gname + " closure mu = coin mu");
      ++cells;
    }
  }
  std::size_t elements = 0;
  const std::vector<std::string> builtins = {"free-abelian:1", "free-abelian:2", "free-abelian:3", "free:2",
                                             "heisenberg",     "bs1p:2",         "bs1p:3",
                                             "product(free-abelian:1, bs1p:2)"};
  for (const auto& name : builtins) {
    auto g = parse_group(name);
    auto ball = enumerate_ball(g, 4);
    auto closure = word_closure(*g, 4);
    v.require(closure.size() == ball.size(), name + " ball size");
    for (const auto& [e, len] : closure) {
      auto idx = ball.find(e);
      v.require(idx && ball.length(*idx) == len, name + " word length");
      ++elements;
    }
  }
  v.detail << cells << " mu cells (coin vs closure); " << elements << " elements over " << builtins.size()
           << " builtins (BFS vs word closure)";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "heisenberg center Delta(n) <= n^2, |z^(n^2)| <= 4n", 60, c1},
      {2, "heisenberg |z^m| <= 6n for m <= n^2, n <= 8", 60, c2},
      {3, "bs1p:2 |a^(2^n)| <= 2n+1, |a^k| <= 3n for k < 2^n", 120, c3},
      {4, "mu(i,4i) bounded (heisenberg), mu(i,2i) increasing (bs1p:2)", 120, c4},
      {5, "Delta/nabla sandwich around mu", 60, c5},
      {6, "nu on the induced space equals mu", 60, c6},
      {7, "length builder for ceil(sqrt r)", 30, c7},
      {8, "abstract line dichotomy", 30, c8},
      {9, "quasi-convexity probes in Z^2", 60, c9},
      {10, "closure mu = coin mu; BFS lengths = word closure", 120, c10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(secs <= c.budget_seconds, "time budget");
    if (!v.pass) ++failures;
    std::string detail = v.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    std::cout << (v.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title << " :: "
              << detail << " (" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << " s / " << c.budget_seconds << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
