#pragma once

#include <string>
#include <vector>

#include "qhe/channels.hpp"

namespace qhe {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest residual (or misclassification count)
  std::string detail;
};

struct ValidationSummary {
  std::vector<CheckResult> checks;
  bool ok() const noexcept;
};

// Channel completeness, closed-form/trace cross-checks, ergotropy oracles and
// sign scans. Literal swaps in the uncorrected variants, which are expected
// to fail the completeness and composition checks.
ValidationSummary validate_all(Convention convention = Convention::Corrected);

}  // namespace qhe
