#include "ppmlr/oracles/hll_mhd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace ppmlr::oracle {

namespace {

// Conserved vector: rho, rho u, rho v, rho w, By, Bz, E.
using U7 = std::array<double, 7>;

U7 to_cons(const MhdState& s, double bx, double gamma) {
  const double ke = 0.5 * s.rho * (s.u * s.u + s.v * s.v + s.w * s.w);
  const double me = 0.5 * (bx * bx + s.by * s.by + s.bz * s.bz);
  return {s.rho,          s.rho * s.u, s.rho * s.v, s.rho * s.w,
          s.by,           s.bz,        s.p / (gamma - 1.0) + ke + me};
}

MhdState to_prim(const U7& u, double bx, double gamma) {
  MhdState s;
  s.rho = u[0];
  if (s.rho <= 0.0) throw std::runtime_error("hll reference: negative density");
  s.u = u[1] / s.rho;
  s.v = u[2] / s.rho;
  s.w = u[3] / s.rho;
  s.by = u[4];
  s.bz = u[5];
  const double ke = 0.5 * s.rho * (s.u * s.u + s.v * s.v + s.w * s.w);
  const double me = 0.5 * (bx * bx + s.by * s.by + s.bz * s.bz);
  s.p = (gamma - 1.0) * (u[6] - ke - me);
  if (s.p <= 0.0) throw std::runtime_error("hll reference: negative pressure");
  return s;
}

U7 flux(const MhdState& s, double bx, double gamma) {
  const double pt = s.p + 0.5 * (bx * bx + s.by * s.by + s.bz * s.bz);
  const double e = to_cons(s, bx, gamma)[6];
  const double udotb = s.u * bx + s.v * s.by + s.w * s.bz;
  return {s.rho * s.u,
          s.rho * s.u * s.u + pt - bx * bx,
          s.rho * s.u * s.v - bx * s.by,
          s.rho * s.u * s.w - bx * s.bz,
          s.by * s.u - bx * s.v,
          s.bz * s.u - bx * s.w,
          (e + pt) * s.u - bx * udotb};
}

double fast_speed_x(const MhdState& s, double bx, double gamma) {
  const double a2 = gamma * s.p / s.rho;
  const double b2 = (bx * bx + s.by * s.by + s.bz * s.bz) / s.rho;
  const double disc = std::sqrt(std::max(
      (a2 + b2) * (a2 + b2) - 4.0 * a2 * bx * bx / s.rho, 0.0));
  return std::sqrt(0.5 * (a2 + b2 + disc));
}

}  // namespace

std::vector<double> hll_centers(const MhdTubeProblem& prob, int cells) {
  std::vector<double> x(cells);
  const double dx = (prob.x1 - prob.x0) / cells;
  for (int i = 0; i < cells; ++i) x[i] = prob.x0 + (i + 0.5) * dx;
  return x;
}

std::vector<MhdState> hll_solve(const MhdTubeProblem& prob, int cells) {
  if (cells < 2) throw std::runtime_error("hll reference: need >= 2 cells");
  const double dx = (prob.x1 - prob.x0) / cells;
  const auto x = hll_centers(prob, cells);

  std::vector<U7> u(cells);
  for (int i = 0; i < cells; ++i)
    u[i] = to_cons(x[i] < prob.x_split ? prob.left : prob.right, prob.bx,
                   prob.gamma);

  double t = 0.0;
  std::vector<U7> f(cells + 1);  // interface fluxes, outflow ends
  while (t < prob.t_end) {
    std::vector<MhdState> prim(cells);
    double smax = 0.0;
    for (int i = 0; i < cells; ++i) {
      prim[i] = to_prim(u[i], prob.bx, prob.gamma);
      smax = std::max(smax,
                      std::abs(prim[i].u) + fast_speed_x(prim[i], prob.bx, prob.gamma));
    }
    double dt = prob.cfl * dx / smax;
    dt = std::min(dt, prob.t_end - t);

    for (int m = 0; m <= cells; ++m) {
      const int il = std::max(m - 1, 0);
      const int ir = std::min(m, cells - 1);
      const MhdState& l = prim[il];
      const MhdState& r = prim[ir];
      const double cl = fast_speed_x(l, prob.bx, prob.gamma);
      const double cr = fast_speed_x(r, prob.bx, prob.gamma);
      const double sl = std::min(l.u - cl, r.u - cr);
      const double sr = std::max(l.u + cl, r.u + cr);
      const U7 fl = flux(l, prob.bx, prob.gamma);
      const U7 fr = flux(r, prob.bx, prob.gamma);
      if (sl >= 0.0) {
        f[m] = fl;
      } else if (sr <= 0.0) {
        f[m] = fr;
      } else {
        const U7 ul = u[il], ur = u[ir];
        for (int q = 0; q < 7; ++q)
          f[m][q] = (sr * fl[q] - sl * fr[q] + sl * sr * (ur[q] - ul[q])) /
                    (sr - sl);
      }
    }
    for (int i = 0; i < cells; ++i)
      for (int q = 0; q < 7; ++q) u[i][q] -= dt / dx * (f[i + 1][q] - f[i][q]);
    t += dt;
  }

  std::vector<MhdState> out(cells);
  for (int i = 0; i < cells; ++i) out[i] = to_prim(u[i], prob.bx, prob.gamma);
  return out;
}

}  // namespace ppmlr::oracle
