// subdist: command-line front end for the subgroup distortion toolkit.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "subdist/cayley_metric.hpp"
#include "subdist/distortion.hpp"
#include "subdist/paper_suite.hpp"
#include "subdist/run_config.hpp"
#include "subdist/runner.hpp"

namespace {

using subdist::OpBlock;
using subdist::RunConfig;

struct Common {
  std::string group;
  std::string subgroup = "full";
  std::size_t radius = 0;
  std::size_t node_cap = 5'000'000;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
};

// Flags forwarded verbatim into the op block, keyed by config name.
using Params = std::map<std::string, std::string>;

void add_common(CLI::App* cmd, Common& c, bool needs_group = true) {
  if (needs_group) {
    cmd->add_option("-g,--group", c.group, "group identifier, e.g. heisenberg, bs1p:2, free-abelian:2")->required();
    cmd->add_option("-s,--subgroup", c.subgroup, "subgroup: full, gen-a, center, diagonal, product-left")
        ->capture_default_str();
    cmd->add_option("-r,--radius", c.radius, "ball radius (default: the largest n needed)");
    cmd->add_option("--node-cap", c.node_cap, "abort ball enumeration beyond this many elements")
        ->capture_default_str();
  }
  cmd->add_option("-f,--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("-o,--output", c.output, "output directory (tables and manifest.json); stdout if omitted");
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

void add_param(CLI::App* cmd, Params& p, const std::string& flag, const std::string& key, const std::string& help,
               bool required = false) {
  auto* opt = cmd->add_option(flag, p[key], help);
  if (required) opt->required();
}

RunConfig make_config(const std::string& op, const Common& c, const Params& p) {
  RunConfig cfg;
  cfg.source = "<command line>";
  cfg.group = c.group;
  cfg.subgroup = c.subgroup;
  if (c.radius > 0) cfg.radius = c.radius;
  cfg.node_cap = c.node_cap;
  cfg.format = c.format == "json" ? subdist::OutputFormat::json : subdist::OutputFormat::csv;
  cfg.output = c.output;
  cfg.seed = c.seed;
  OpBlock block;
  block.name = op;
  block.source = cfg.source;
  for (const auto& [k, v] : p) {
    if (!v.empty()) block.params.emplace(k, subdist::ConfigValue{v, 0, 0});
  }
  cfg.ops.push_back(std::move(block));
  return cfg;
}

const char* kColumns = R"(CSV columns:
  ball        radius, sphere_size, cumulative_size, exactness_flag
  delta/nabla n, value, exactness_flag, witness
  mu          m, n, value, exactness_flag, witness
  sandwich    m, n, lower, value, upper, exactness_flag, holds
  ratio       i, n, value, exactness_flag, witness            (n = c * i)
  nu          m, n, value, exactness_flag, unreachable, witness
  qc          n, value, exactness_flag, witness               (value = M(n))
  qc quasi    from, to, lambda, C, value, exactness_flag, method, paths_checked,
              exhaustive_complete, witness
  design-ell  ell: s, ell, f, exactness_flag; plateaus: k, p_k, k_p_k, value,
              exactness_flag; certificate: property, holds, checked, exactness_flag
exactness_flag is one of exact, lower-bound, upper-uncertain.
Grids accept N, A..B and comma lists such as 1..4,8.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subdist: word metrics, subgroup distortion and related invariants"};
  app.footer(kColumns);
  app.require_subcommand(1);
  app.set_version_flag("--version", subdist::version());

  Common common;
  std::map<std::string, Params> params;
  std::map<std::string, CLI::App*> ops;

  auto op = [&](const std::string& name, const std::string& help, bool needs_group = true) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, common, needs_group);
    ops[name] = cmd;
    return cmd;
  };

  auto* ball = op("ball", "sphere and ball sizes up to a radius");
  (void)ball;
  auto* d = op("delta", "distortion Delta(n)");
  add_param(d, params["delta"], "-n,--n", "n", "n grid", true);
  auto* nb = op("nabla", "lower distortion nabla(n)");
  add_param(nb, params["nabla"], "-n,--n", "n", "n grid", true);
  auto* mu = op("mu", "generalized distortion mu(m, n)");
  add_param(mu, params["mu"], "-m,--m", "m", "m grid", true);
  add_param(mu, params["mu"], "-n,--n", "n", "n grid", true);
  add_param(mu, params["mu"], "--method", "method", "auto, coin or closure");
  add_param(mu, params["mu"], "--visit-cap", "visit_cap", "closure search cap");
  auto* sw = op("sandwich", "check ceil(Delta(n)/Delta(m)) <= mu(m,n) <= ceil(Delta(n)/(nabla(m)-1))");
  add_param(sw, params["sandwich"], "-m,--m", "m", "m grid", true);
  add_param(sw, params["sandwich"], "-n,--n", "n", "n grid", true);
  auto* ratio = op("ratio", "the slice i -> mu(i, c*i)");
  add_param(ratio, params["ratio"], "-c,--c", "c", "ratio c (default 2)");
  add_param(ratio, params["ratio"], "-i,--i", "i", "i range", true);
  auto* nu = op("nu", "nu(m, n) on the induced subgroup space");
  add_param(nu, params["nu"], "-m,--m", "m", "m grid", true);
  add_param(nu, params["nu"], "-n,--n", "n", "n grid", true);
  add_param(nu, params["nu"], "--truncation", "truncation", "core radius (default: largest n)");
  add_param(nu, params["nu"], "--slack", "slack", "extra shell radius (default: largest n)");
  auto* de = op("design-ell", "build a prescribed length function and certify it", false);
  add_param(de, params["design-ell"], "--source", "source", "sqrt, log-scaled or power:k (default sqrt)");
  add_param(de, params["design-ell"], "--k-max", "k_max", "number of plateaus (default: as many as fit, at most 6)");
  add_param(de, params["design-ell"], "--grid-max", "grid_max", "grid size (default 10000)");
  add_param(de, params["design-ell"], "--rows", "rows", "ell rows to emit (default grid_max)");
  auto* qc = op("qc", "geodesic excursion M(n) and quasi-geodesic excursion probes");
  add_param(qc, params["qc"], "-n,--n", "n", "n range", true);
  add_param(qc, params["qc"], "--d-cap", "d_cap", "distance-to-subgroup cap (default 4)");
  add_param(qc, params["qc"], "--from", "from", "quasi-geodesic start word (default e)");
  add_param(qc, params["qc"], "--to", "to", "quasi-geodesic end word, e.g. 'a^6'");
  add_param(qc, params["qc"], "--lambda", "lambda", "lambda >= 1 (integer or p/q)");
  add_param(qc, params["qc"], "-C,--C", "C", "C >= 0 (integer or p/q)");
  add_param(qc, params["qc"], "--path-cap", "path_cap", "exhaustive search expansion cap");
  add_param(qc, params["qc"], "--samples", "samples", "random paths");

  auto* run_cmd = app.add_subcommand("run", "execute a configuration file");
  std::string config_path;
  run_cmd->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);

  auto* suite = app.add_subcommand("paper-suite", "run the fixed suite of worked examples");
  std::size_t radius_limit = 0;
  bool timings = false;
  suite->add_option("--radius-limit", radius_limit, "skip checks that need a larger ball");
  suite->add_flag("--timings", timings, "append wall-clock seconds to each line");

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite->parsed()) {
      subdist::SuiteOptions opts;
      if (radius_limit > 0) opts.radius_limit = radius_limit;
      const auto checks = subdist::run_paper_suite(opts);
      std::cout << subdist::format_suite_report(checks, timings);
      for (const auto& c : checks) {
        if (c.status == "fail") return 1;
      }
      return 0;
    }
    RunConfig cfg;
    if (run_cmd->parsed()) {
      std::ifstream in(config_path);
      std::stringstream text;
      text << in.rdbuf();
      cfg = subdist::parse_run_config(text.str(), config_path);
    } else {
      for (const auto& [name, cmd] : ops) {
        if (cmd->parsed()) cfg = make_config(name, common, params[name]);
      }
    }
    subdist::run(cfg, std::cout);
  } catch (const subdist::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const subdist::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
