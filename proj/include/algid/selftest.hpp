#pragma once

// Small-prime oracle suite: exhaustive and randomized checks of the group
// and workflow laws in UT(4, p) for a prime 5 <= p <= 13.

#include <cstdint>
#include <string>
#include <vector>

namespace algid {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SelftestOptions {
  std::uint64_t prime = 5;
  /// Checks that would start after the budget is spent are reported as failed.
  double budget_seconds = 120;
  std::uint64_t seed = 20240611;
  unsigned random_trials = 10000;
};

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options = {});

}  // namespace algid
