#pragma once

#include <string>
#include <vector>

namespace madelung {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  // Worst observed deviation (or the statistic named in detail) and the bound
  // it was held to.
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] int failures() const;
  // {schema: 1, passed, failures, checks: [...]}; contains no timings, so two
  // runs produce identical text.
  [[nodiscard]] std::string to_json() const;
};

struct VerifyOptions {
  // Run only checks whose "module/name" contains this substring.
  std::string filter;
};

// Every module invariant as a pass/fail check. Exceptions inside a check are
// reported as failures.
[[nodiscard]] VerifyReport run_verify(const VerifyOptions& options = {});

// "module/name" of every registered check, in run order.
[[nodiscard]] std::vector<std::string> verify_check_names();

}  // namespace madelung
