#pragma once

#include <string>
#include <vector>

namespace ppmlr {

struct CheckResult {
  std::string name;
  double metric = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Suites: sod, briowu, convergence, conservation, partition. Each compares
// the solver against an independent reference (exact Riemann solution,
// high-resolution HLL run, analytic advection, volume-integral bookkeeping,
// or the single-block run) and reports metric vs threshold.
std::vector<std::string> suite_names();

// Throws InvalidSpec on an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& name);

}  // namespace ppmlr
