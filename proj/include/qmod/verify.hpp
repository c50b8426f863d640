#ifndef QMOD_VERIFY_HPP
#define QMOD_VERIFY_HPP

#include <string>
#include <vector>

namespace qmod::verify {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // what was compared, or the failure/exception text
};

struct Suite {
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Runs the built-in suite reproducing the key displayed formulas and
/// structural theorems. Exceptions inside a check mark it failed; the suite
/// itself never throws.
Suite run_all();

/// Pass/fail table plus a formula count summary.
std::string to_text(const Suite& s);

/// {"schema": 1, ...}; deterministic.
std::string to_json(const Suite& s);

}  // namespace qmod::verify

#endif
