// selfcheck.hpp
// Built-in consistency suites over library invariants: closed-form
// permanents, lifted unitarity, eigenbasis orthonormality and
// unbiasedness, measurement equivalences, and bound tightness on
// reference states.

#pragma once

#include <string>
#include <vector>

namespace lonsim {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string message;  // empty on pass
};

std::vector<std::string> selfcheck_names();

// Runs all suites, or only those whose name contains `only`.
// Throws std::invalid_argument when the filter matches nothing.
std::vector<CheckResult> run_selfchecks(const std::string& only = "");

}  // namespace lonsim
