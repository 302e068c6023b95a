#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vrsgd::bench {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-checks against the independent oracles; prints one line per check.
std::vector<CheckResult> run_verify_suite();

bool print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace vrsgd::bench
