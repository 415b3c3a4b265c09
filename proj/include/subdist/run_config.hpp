#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subdist/rpath_metric.hpp"

namespace subdist {

// Parse or validation failure, prefixed "<source>:<line>:<column>: ".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ConfigValue {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

// One "[name]" block and its key = value lines.
class OpBlock {
 public:
  std::string name;
  std::size_t line = 0;
  std::map<std::string, ConfigValue> params;
  std::string source = "<config>";

  bool has(const std::string& key) const { return params.contains(key); }
  std::string text(const std::string& key, const std::string& fallback) const;
  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const;
  Rational rational(const std::string& key, const Rational& fallback) const;
  // "1..8", "1,2,5", "1..4, 8" or a single integer; sorted and deduplicated.
  std::vector<std::size_t> grid(const std::string& key) const;
  std::vector<std::size_t> grid(const std::string& key, const std::vector<std::size_t>& fallback) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string group;
  std::string subgroup = "full";
  std::optional<std::size_t> radius;
  std::size_t node_cap = 5'000'000;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // directory; empty means standard output
  std::uint64_t seed = 1;
  std::vector<OpBlock> ops;
  std::string source = "<config>";
  std::map<std::string, ConfigValue> positions;  // where each top-level key was set

  // Position of a top-level key, or line 1 column 1 when it was not given.
  std::pair<std::size_t, std::size_t> position(const std::string& key) const;

  // Canonical text form, used for the manifest digest.
  std::string canonical() const;
};

// Top-level "key = value" lines, then "[op]" blocks. '#' starts a comment.
// Throws ConfigError; an empty operation list is an error.
RunConfig parse_run_config(std::string_view text, const std::string& source = "<config>");

// Known operation names.
const std::vector<std::string>& known_operations();

std::uint64_t fnv1a(std::string_view data);

}  // namespace subdist
