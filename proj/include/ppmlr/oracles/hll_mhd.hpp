#pragma once

#include <vector>

namespace ppmlr::oracle {

// Primitive 1D ideal-MHD state with constant normal field Bx (mu0 = 1).
struct MhdState {
  double rho = 0.0;
  double u = 0.0, v = 0.0, w = 0.0;
  double by = 0.0, bz = 0.0;
  double p = 0.0;
};

struct MhdTubeProblem {
  MhdState left;
  MhdState right;
  double bx = 0.0;
  double gamma = 2.0;
  double x0 = 0.0, x1 = 1.0;  // domain
  double x_split = 0.5;
  double t_end = 0.1;
  double cfl = 0.8;
};

// First-order HLL finite-volume reference on a uniform grid with outflow
// ends. Deliberately diffusive but robust; run it at high resolution.
std::vector<MhdState> hll_solve(const MhdTubeProblem& prob, int cells);

// Cell centers matching hll_solve output.
std::vector<double> hll_centers(const MhdTubeProblem& prob, int cells);

}  // namespace ppmlr::oracle
