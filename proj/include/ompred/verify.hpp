#pragma once

// Desk-scale invariant suites behind the `verify` subcommand.

#include <string>
#include <vector>

namespace ompred {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// "linalg", "decompositions", "projection", "oracles" or "all".
/// UsageError on an unknown name.
std::vector<SuiteReport> run_verify(const std::string& suite);

std::vector<std::string> verify_suite_names();

}  // namespace ompred
