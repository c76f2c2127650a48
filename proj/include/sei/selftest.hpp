#pragma once

#include <string>
#include <vector>

namespace sei {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation
  double tolerance = 0.0;  // bound it was checked against
};

/// Quick invariant suite: Rodrigues orthogonality and series agreement,
/// time reversibility of the two-step map, and real/complex equivalence of the
/// nonlinear remainder. Deterministic (fixed seed).
std::vector<CheckResult> run_selftest(int samples = 1000);

}  // namespace sei
