#include "subdist/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "subdist/cayley_metric.hpp"
#include "subdist/distortion.hpp"
#include "subdist/length_designer.hpp"
#include "subdist/qc_probe.hpp"
#include "subdist/rpath_metric.hpp"

#ifndef SUBDIST_VERSION
#define SUBDIST_VERSION "0.0.0"
#endif

namespace subdist {

std::string version() { return SUBDIST_VERSION; }

namespace {

using Row = std::vector<nlohmann::ordered_json>;
namespace fs = std::filesystem;

std::string flag(Exactness e) { return std::string(to_string(e)); }

std::string csv_field(const nlohmann::ordered_json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? std::string() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::size_t grid_max(const std::vector<std::size_t>& g) { return g.empty() ? 0 : g.back(); }

// Shared state for one run: the ambient model, subgroup and a lazily built ball.
class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg_(cfg) {}

  const ModelPtr& model() {
    if (!model_) {
      if (cfg_.group.empty()) throw ConfigError(cfg_.source, 1, 1, "missing 'group'");
      try {
        model_ = parse_group(cfg_.group);
      } catch (const InvalidArgument& e) {
        auto [line, column] = cfg_.position("group");
        throw ConfigError(cfg_.source, line, column, std::string("group: ") + e.what());
      }
    }
    return model_;
  }

  const MarkedSubgroup& sub() {
    if (!sub_) {
      try {
        sub_ = marked_subgroup(cfg_.subgroup, model());
      } catch (const InvalidArgument& e) {
        auto [line, column] = cfg_.position("subgroup");
        throw ConfigError(cfg_.source, line, column, std::string("subgroup: ") + e.what());
      }
    }
    return *sub_;
  }

  // The ball of the configured radius; `needed` is checked against it.
  const BallIndex& ball(const OpBlock& op, const std::string& key, std::size_t needed) {
    const std::size_t radius = cfg_.radius.value_or(needed);
    if (needed > radius) {
      op.fail(key, "needs radius " + std::to_string(needed) + " but radius = " + std::to_string(radius));
    }
    if (!ball_ || ball_->radius() < radius) {
      ball_.emplace(BallIndex::enumerate(model(), radius, cfg_.node_cap));
    }
    return *ball_;
  }

  std::string format(const std::optional<Element>& g) { return g ? model()->format(*g) : std::string(); }

 private:
  const RunConfig& cfg_;
  ModelPtr model_;
  SubgroupPtr sub_;
  std::optional<BallIndex> ball_;
};

MuOptions mu_options(const OpBlock& op) {
  MuOptions opts;
  const std::string method = op.text("method", "auto");
  if (method == "auto") {
    opts.method = MuMethod::automatic;
  } else if (method == "coin") {
    opts.method = MuMethod::coin_search;
  } else if (method == "closure") {
    opts.method = MuMethod::closure;
  } else {
    op.fail("method", "expected auto, coin or closure");
  }
  opts.visit_cap = op.integer("visit_cap", opts.visit_cap);
  return opts;
}

OpResult op_ball(Context& ctx, const OpBlock& op, const RunConfig& cfg) {
  const std::size_t r = op.integer("radius", cfg.radius.value_or(0));
  if (!cfg.radius && !op.has("radius")) op.fail("radius", "ball needs 'radius' (top level or in the block)");
  const auto& ball = ctx.ball(op, "radius", r);
  Table t{"ball", {"radius", "sphere_size", "cumulative_size", "exactness_flag"}, {}};
  std::size_t total = 0;
  for (std::size_t i = 0; i <= r; ++i) {
    total += ball.sphere(i).size();
    t.rows.push_back(Row{i, ball.sphere(i).size(), total, "exact"});
  }
  return {op.name, {t}};
}

OpResult op_delta(Context& ctx, const OpBlock& op) {
  const auto ns = op.grid("n");
  const auto& ball = ctx.ball(op, "n", grid_max(ns));
  Table t{"delta", {"n", "value", "exactness_flag", "witness"}, {}};
  for (auto n : ns) {
    auto w = delta(ball, ctx.sub(), n);
    t.rows.push_back(Row{n, w.value, flag(w.exactness), ctx.format(w.witness)});
  }
  return {op.name, {t}};
}

OpResult op_nabla(Context& ctx, const OpBlock& op) {
  const auto ns = op.grid("n");
  const auto& ball = ctx.ball(op, "n", grid_max(ns));
  Table t{"nabla", {"n", "value", "exactness_flag", "witness"}, {}};
  for (auto n : ns) {
    auto w = nabla(ball, ctx.sub(), n);
    t.rows.push_back(Row{n, w.value, flag(w.exactness), ctx.format(w.witness)});
  }
  return {op.name, {t}};
}

OpResult op_mu(Context& ctx, const OpBlock& op) {
  const auto ms = op.grid("m");
  const auto ns = op.grid("n");
  const auto& ball = ctx.ball(op, "n", std::max(grid_max(ms), grid_max(ns)));
  const auto table = mu_table(ball, ctx.sub(), ms, ns, mu_options(op));
  Table t{"mu", {"m", "n", "value", "exactness_flag", "witness"}, {}};
  for (const auto& c : table.cells) t.rows.push_back(Row{c.m, c.n, c.value, flag(c.exactness), c.witness});
  return {op.name, {t}};
}

OpResult op_sandwich(Context& ctx, const OpBlock& op) {
  const auto ms = op.grid("m");
  const auto ns = op.grid("n");
  const std::size_t top = std::max(grid_max(ms), grid_max(ns));
  const auto& ball = ctx.ball(op, "n", top);
  const auto dt = distortion_table(ball, ctx.sub(), top);
  const auto mt = mu_table(ball, ctx.sub(), ms, ns, mu_options(op));
  Table t{"sandwich", {"m", "n", "lower", "value", "upper", "exactness_flag", "holds"}, {}};
  for (const auto& c : mt.cells) {
    const auto* dn = dt.find_delta(c.n);
    const auto* dm = dt.find_delta(c.m);
    const auto* nm = dt.find_nabla(c.m);
    const bool exact = c.exactness == Exactness::exact && dn->exactness == Exactness::exact &&
                       dm->exactness == Exactness::exact && dm->value > 0;
    nlohmann::ordered_json lower, upper;
    std::string holds = "skipped";
    if (exact) {
      const std::size_t lo = ceil_div(dn->value, dm->value);
      lower = lo;
      bool ok = lo <= c.value;
      if (nm->exactness == Exactness::exact && nm->value >= 2) {
        const std::size_t hi = ceil_div(dn->value, nm->value - 1);
        upper = hi;
        ok = ok && c.value <= hi;
      }
      holds = ok ? "yes" : "no";
    }
    const Exactness e = exact ? Exactness::exact : Exactness::lower_bound;
    t.rows.push_back(Row{c.m, c.n, lower, c.value, upper, flag(e), holds});
  }
  return {op.name, {t}};
}

OpResult op_ratio(Context& ctx, const OpBlock& op) {
  const std::size_t c = op.integer("c", 2);
  const auto is = op.grid("i");
  if (c == 0) op.fail("c", "must be positive");
  const auto& ball = ctx.ball(op, "i", c * grid_max(is));
  const auto probe = mu_ratio_probe(ball, ctx.sub(), c, is.front(), is.back(), mu_options(op));
  Table t{"ratio", {"i", "n", "value", "exactness_flag", "witness"}, {}};
  for (const auto& e : probe.entries) {
    if (std::binary_search(is.begin(), is.end(), e.m)) {
      t.rows.push_back(Row{e.m, e.n, e.value, flag(e.exactness), e.witness});
    }
  }
  return {op.name, {t}};
}

OpResult op_nu(Context& ctx, const OpBlock& op) {
  const auto ms = op.grid("m");
  const auto ns = op.grid("n");
  const std::size_t truncation = op.integer("truncation", grid_max(ns));
  const std::size_t slack = op.integer("slack", grid_max(ns));
  if (grid_max(ns) > truncation) op.fail("truncation", "must be at least the largest n");
  const auto& ball = ctx.ball(op, "slack", std::max(truncation + slack, grid_max(ms)));
  const auto space = induced_space(ball, ctx.sub(), truncation, slack);
  Table t{"nu", {"m", "n", "value", "exactness_flag", "unreachable", "witness"}, {}};
  for (auto m : ms) {
    if (m == 0) op.fail("m", "m must be positive");
    for (auto n : ns) {
      const auto r = nu(space, Rational(static_cast<std::int64_t>(m)), Rational(static_cast<std::int64_t>(n)));
      t.rows.push_back(Row{m, n, r.value, flag(r.exactness), r.unreachable.size(),
                           r.witness ? space.label(*r.witness) : std::string()});
    }
  }
  return {op.name, {t}};
}

OpResult op_qc(Context& ctx, const OpBlock& op, const RunConfig& cfg) {
  const auto ns = op.grid("n");
  const std::size_t d_cap = op.integer("d_cap", 4);
  const auto& ball = ctx.ball(op, "n", std::max(grid_max(ns), d_cap));
  const auto rows = quasiconvexity_report(ball, ctx.sub(), grid_max(ns), d_cap);
  Table t{"qc", {"n", "value", "exactness_flag", "witness"}, {}};
  for (const auto& r : rows) {
    if (std::binary_search(ns.begin(), ns.end(), r.n)) {
      t.rows.push_back(Row{r.n, r.max_excursion, flag(r.exactness), ctx.format(r.witness)});
    }
  }
  OpResult result{op.name, {t}};
  if (op.has("to")) {
    const auto& model = *ctx.model();
    const Element from = parse_element(model, op.text("from", "e"));
    const Element to = parse_element(model, op.text("to", "e"));
    const Rational lambda = op.rational("lambda", Rational(1));
    const Rational c = op.rational("C", Rational(0));
    QgSearchOptions opts;
    opts.d_cap = d_cap;
    opts.path_cap = op.integer("path_cap", opts.path_cap);
    opts.samples = op.integer("samples", opts.samples);
    opts.seed = op.integer("seed", cfg.seed);
    QgExcursion q;
    try {
      q = quasi_geodesic_excursion(ball, ctx.sub(), lambda, c, from, to, opts);
    } catch (const InvalidArgument& e) {
      op.fail("to", e.what());
    }
    auto text = [](const Rational& r) {
      return r.denominator() == 1 ? std::to_string(r.numerator())
                                  : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    };
    std::string path;
    for (const auto& v : q.witness) path += (path.empty() ? "" : " ; ") + model.format(v);
    Table qt{"quasi",
             {"from", "to", "lambda", "C", "value", "exactness_flag", "method", "paths_checked", "exhaustive_complete",
              "witness"},
             {}};
    qt.rows.push_back(Row{model.format(from), model.format(to), text(lambda), text(c), q.lower_bound,
                          flag(Exactness::lower_bound), q.method, q.paths_checked, q.exhaustive_complete, path});
    result.tables.push_back(std::move(qt));
  }
  return result;
}

OpResult op_design_ell(const OpBlock& op) {
  const std::string source = op.text("source", "sqrt");
  const std::size_t k_max = op.integer("k_max", 6);
  const std::uint64_t grid = op.integer("grid_max", 10'000);
  SourceFunction f;
  std::optional<PrescribedLengthFunction> ell;
  try {
    f = source_function(source);
  } catch (const InvalidArgument& e) {
    op.fail("source", e.what());
  }
  // Without an explicit k_max, take the most plateaus (up to 6) that fit.
  const std::size_t k_min = op.has("k_max") ? k_max : 1;
  for (std::size_t k = k_max; !ell; --k) {
    try {
      ell.emplace(build_ell(f, k, grid));
    } catch (const InvalidArgument& e) {
      if (k <= k_min) op.fail(op.has("k_max") ? "k_max" : "grid_max", e.what());
    }
  }
  const std::uint64_t rows = std::min<std::uint64_t>(op.integer("rows", grid), grid);
  Table values{"ell", {"s", "ell", "f", "exactness_flag"}, {}};
  for (std::uint64_t s = 0; s <= rows; ++s) {
    values.rows.push_back(Row{s, (*ell)(static_cast<std::int64_t>(s)), s == 0 ? 0 : f.eval(s), "exact"});
  }
  Table plateaus{"plateaus", {"k", "p_k", "k_p_k", "value", "exactness_flag"}, {}};
  for (const auto& p : ell->plateaus()) plateaus.rows.push_back(Row{p.k, p.lo, p.hi, p.value, "exact"});
  const auto cert = certify(*ell, &f, grid, op.integer("exhaustive", 3000), op.integer("samples", 200'000),
                            op.integer("seed", 1));
  Table report{"certificate", {"property", "holds", "checked", "exactness_flag"}, {}};
  report.rows.push_back(Row{"monotone", cert.monotone, grid, "exact"});
  report.rows.push_back(Row{"subadditive_exhaustive", cert.subadditive, cert.exhaustive_limit, "exact"});
  report.rows.push_back(Row{"subadditive_sampled", cert.subadditive, cert.sampled_pairs, "exact"});
  report.rows.push_back(Row{"dominates_f", cert.dominates, grid, "exact"});
  report.rows.push_back(Row{"plateaus", cert.plateaus_hold, cert.plateau_count, "exact"});
  return {op.name, {values, plateaus, report}};
}

OpResult execute(Context& ctx, const OpBlock& op, const RunConfig& cfg) {
  if (op.name == "ball") return op_ball(ctx, op, cfg);
  if (op.name == "delta") return op_delta(ctx, op);
  if (op.name == "nabla") return op_nabla(ctx, op);
  if (op.name == "mu") return op_mu(ctx, op);
  if (op.name == "sandwich") return op_sandwich(ctx, op);
  if (op.name == "ratio") return op_ratio(ctx, op);
  if (op.name == "nu") return op_nu(ctx, op);
  if (op.name == "qc") return op_qc(ctx, op, cfg);
  if (op.name == "design-ell") return op_design_ell(op);
  throw ConfigError(op.source, op.line, 1, "unknown operation '" + op.name + "'");
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["name"] = table.name;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
    j["rows"].push_back(std::move(obj));
  }
  return j;
}

Element parse_element(const GroupModel& model, const std::string& text) {
  std::istringstream in(text);
  std::string token;
  Element g = model.identity();
  while (in >> token) {
    if (token == "e") continue;
    const auto& gens = model.generators();
    auto exact = std::find_if(gens.begin(), gens.end(), [&](const Generator& x) { return x.name == token; });
    if (exact != gens.end()) {
      g = model.multiply(g, exact->element);
      continue;
    }
    const auto caret = token.rfind('^');
    if (caret == std::string::npos) throw InvalidArgument("unknown generator '" + token + "'");
    std::int64_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoll(token.substr(caret + 1), &used);
      if (used != token.size() - caret - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("bad exponent in '" + token + "'");
    }
    g = model.multiply(g, model.power(model.generator(token.substr(0, caret)), k));
  }
  return g;
}

RunResult run(const RunConfig& config, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  RunResult result;
  Context ctx(config);
  for (const auto& op : config.ops) {
    const auto start = Clock::now();
    result.results.push_back(execute(ctx, op, config));
    result.timings.push_back(
        StageTiming{op.name, std::chrono::duration<double>(Clock::now() - start).count()});
  }

  const bool json = config.format == OutputFormat::json;
  auto op_json = [&](const OpResult& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["operation"] = r.operation;
    j["group"] = config.group;
    j["subgroup"] = config.subgroup;
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : r.tables) j["tables"].push_back(to_json(t));
    return j;
  };

  if (config.output.empty()) {
    if (json) {
      nlohmann::ordered_json all;
      all["schema_version"] = kSchemaVersion;
      all["operations"] = nlohmann::ordered_json::array();
      for (const auto& r : result.results) all["operations"].push_back(op_json(r));
      out << all.dump(2) << "\n";
    } else {
      bool first = true;
      for (const auto& r : result.results) {
        for (const auto& t : r.tables) {
          if (!first) out << "\n";
          first = false;
          if (r.tables.size() > 1 || result.results.size() > 1) out << "# " << r.operation << " " << t.name << "\n";
          out << to_csv(t);
        }
      }
    }
    return result;
  }

  const fs::path dir(config.output);
  fs::create_directories(dir);
  for (std::size_t i = 0; i < result.results.size(); ++i) {
    const auto& r = result.results[i];
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "%02zu_", i + 1);
    if (json) {
      const std::string name = prefix + r.operation + ".json";
      write_file(dir / name, op_json(r).dump(2) + "\n");
      result.files.push_back(name);
    } else {
      for (const auto& t : r.tables) {
        const std::string name =
            prefix + r.operation + (t.name == r.operation ? std::string() : "_" + t.name) + ".csv";
        write_file(dir / name, to_csv(t));
        result.files.push_back(name);
      }
    }
  }
  nlohmann::ordered_json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool"] = "subdist";
  manifest["version"] = version();
  manifest["config_digest"] = "fnv1a64:" + hex64(fnv1a(config.canonical()));
  manifest["seed"] = config.seed;
  manifest["files"] = result.files;
  manifest["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : result.timings) {
    manifest["stages"].push_back({{"stage", s.stage}, {"wall_clock_seconds", s.seconds}});
  }
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  result.files.push_back("manifest.json");
  out << "wrote " << result.files.size() << " files to " << dir.string() << "\n";
  return result;
}

}  // namespace subdist
