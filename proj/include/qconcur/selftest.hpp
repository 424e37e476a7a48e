#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qconcur {

struct SelftestOptions {
  std::uint64_t seed = 20240901;
  /// Multiplies the generator-pair bound by (1 + eps) inside the oracle
  /// comparison; used to confirm the suite notices a mis-scaled constant.
  double injected_perturbation = 0.0;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the oracle-equivalence and invariant suites.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opt = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace qconcur
