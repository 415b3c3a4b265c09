#include "subdist/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace subdist {
namespace {

std::string trim(std::string_view s, std::size_t* offset = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (offset) *offset = b;
  return std::string(s.substr(b, e - b));
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

const std::set<std::string> kTopLevelKeys = {"group", "subgroup", "radius", "node_cap", "format", "output", "seed"};

}  // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

const std::vector<std::string>& known_operations() {
  static const std::vector<std::string> ops = {"ball", "delta", "nabla", "mu",  "sandwich",
                                               "ratio", "nu",   "qc",    "design-ell"};
  return ops;
}

void OpBlock::fail(const std::string& key, const std::string& message) const {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError(source, line, 1, "[" + name + "] " + message);
  throw ConfigError(source, it->second.line, it->second.column, "[" + name + "] " + key + ": " + message);
}

std::string OpBlock::text(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second.text;
}

std::uint64_t OpBlock::integer(const std::string& key, std::uint64_t fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::uint64_t v = 0;
  if (!parse_u64(it->second.text, v)) fail(key, "expected a non-negative integer, got '" + it->second.text + "'");
  return v;
}

Rational OpBlock::rational(const std::string& key, const Rational& fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const std::string& t = it->second.text;
  const auto slash = t.find('/');
  std::int64_t num = 0;
  std::int64_t den = 1;
  const bool ok = slash == std::string::npos
                      ? parse_i64(t, num)
                      : parse_i64(std::string_view(t).substr(0, slash), num) &&
                            parse_i64(std::string_view(t).substr(slash + 1), den) && den > 0;
  if (!ok) fail(key, "expected an integer or a fraction p/q, got '" + t + "'");
  return Rational(num, den);
}

std::vector<std::size_t> OpBlock::grid(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) fail(key, "missing required grid '" + key + "'");
  std::vector<std::size_t> out;
  std::stringstream items(it->second.text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const std::string piece = trim(item);
    const auto dots = piece.find("..");
    std::uint64_t lo = 0, hi = 0;
    const bool ok = dots == std::string::npos
                        ? parse_u64(piece, lo) && (hi = lo, true)
                        : parse_u64(trim(piece.substr(0, dots)), lo) && parse_u64(trim(piece.substr(dots + 2)), hi);
    if (!ok) fail(key, "bad grid item '" + piece + "' (expected N, A..B or a comma list)");
    if (lo > hi) fail(key, "empty range '" + piece + "'");
    if (hi - lo > 1'000'000) fail(key, "range '" + piece + "' is too long");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) fail(key, "grid is empty");
  return out;
}

std::vector<std::size_t> OpBlock::grid(const std::string& key, const std::vector<std::size_t>& fallback) const {
  return has(key) ? grid(key) : fallback;
}

std::pair<std::size_t, std::size_t> RunConfig::position(const std::string& key) const {
  auto it = positions.find(key);
  if (it == positions.end()) return {1, 1};
  return {it->second.line, it->second.column};
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "group=" << group << "\nsubgroup=" << subgroup << "\nradius=" << (radius ? std::to_string(*radius) : "")
      << "\nnode_cap=" << node_cap << "\nformat=" << (format == OutputFormat::csv ? "csv" : "json")
      << "\nseed=" << seed << "\n";
  for (const auto& op : ops) {
    out << "[" << op.name << "]\n";
    for (const auto& [k, v] : op.params) out << k << "=" << v.text << "\n";
  }
  return out.str();
}

RunConfig parse_run_config(std::string_view text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  std::set<std::string> seen_top;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t indent = 0;
    const std::string line = trim(raw, &indent);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, indent + line.size(), "expected ']'");
      OpBlock op;
      op.name = trim(std::string_view(line).substr(1, line.size() - 2));
      op.line = line_no;
      op.source = source;
      const auto& known = known_operations();
      if (std::find(known.begin(), known.end(), op.name) == known.end()) {
        throw ConfigError(source, line_no, indent + 2, "unknown operation '" + op.name + "'");
      }
      cfg.ops.push_back(std::move(op));
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, indent + 1, "expected 'key = value'");
    std::size_t value_offset = 0;
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1), &value_offset);
    const std::size_t value_column = indent + eq + 2 + value_offset;
    if (key.empty()) throw ConfigError(source, line_no, indent + 1, "empty key");
    if (value.empty()) throw ConfigError(source, line_no, value_column, "empty value for '" + key + "'");

    if (!cfg.ops.empty()) {
      auto& op = cfg.ops.back();
      if (!op.params.emplace(key, ConfigValue{value, line_no, value_column}).second) {
        throw ConfigError(source, line_no, indent + 1, "duplicate key '" + key + "' in [" + op.name + "]");
      }
    } else {
      if (!kTopLevelKeys.contains(key)) throw ConfigError(source, line_no, indent + 1, "unknown key '" + key + "'");
      if (!seen_top.insert(key).second) throw ConfigError(source, line_no, indent + 1, "duplicate key '" + key + "'");
      cfg.positions.emplace(key, ConfigValue{value, line_no, value_column});
      std::uint64_t number = 0;
      auto need_number = [&] {
        if (!parse_u64(value, number)) {
          throw ConfigError(source, line_no, value_column, key + ": expected a non-negative integer");
        }
      };
      if (key == "group") {
        cfg.group = value;
      } else if (key == "subgroup") {
        cfg.subgroup = value;
      } else if (key == "radius") {
        need_number();
        cfg.radius = number;
      } else if (key == "node_cap") {
        need_number();
        if (number == 0) throw ConfigError(source, line_no, value_column, "node_cap must be positive");
        cfg.node_cap = number;
      } else if (key == "seed") {
        need_number();
        cfg.seed = number;
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "format") {
        if (value == "csv") {
          cfg.format = OutputFormat::csv;
        } else if (value == "json") {
          cfg.format = OutputFormat::json;
        } else {
          throw ConfigError(source, line_no, value_column, "format must be csv or json");
        }
      }
    }
    if (end == text.size()) break;
  }
  if (cfg.ops.empty()) throw ConfigError(source, line_no == 0 ? 1 : line_no, 1, "no operations requested");
  return cfg;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace subdist
