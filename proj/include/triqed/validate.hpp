#pragma once

#include <string>
#include <vector>

namespace triqed {

// One end-to-end correctness check. `achieved` is the worst observed error
// (or a detector score), `tolerance` the bound it must satisfy.
struct CheckResult {
  std::string name;
  std::string detail;
  double tolerance = 0;
  double achieved = 0;
  bool pass = false;
};

struct ValidationOptions {
  // Relative tolerance for closed-form vs dense spectrum matching. The CLI
  // validate mode lets users relax/tighten this one; everything else is
  // pinned.
  double spectrum_rel_tol = 1e-6;
};

// Runs the full battery (nine checks) and returns one result per check, in a
// fixed order. Heavy: builds dense Hamiltonians up to a few thousand states.
std::vector<CheckResult> run_acceptance_suite(const ValidationOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace triqed
