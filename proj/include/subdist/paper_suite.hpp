#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subdist {

struct SuiteOptions {
  // Largest ball radius any check may use; checks that need more are skipped.
  std::optional<std::size_t> radius_limit;
  std::uint64_t seed = 1;
};

struct SuiteCheck {
  int id = 0;
  std::string title;
  std::size_t radius = 0;  // ball radius the check needs (0: no ball)
  std::string status;      // "pass", "fail" or "skipped: insufficient radius"
  std::string detail;
  double seconds = 0;
};

// The fixed desk-scale suite of worked examples.
std::vector<SuiteCheck> run_paper_suite(const SuiteOptions& opts = {});

// One line per check; byte-identical across runs unless timings are included.
std::string format_suite_report(const std::vector<SuiteCheck>& checks, bool with_timings = false);

}  // namespace subdist
