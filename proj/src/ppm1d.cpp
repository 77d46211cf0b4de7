#include "ppmlr/ppm1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppmlr/errors.hpp"

namespace ppmlr {

namespace {

double limited_slope(std::span<const double> q, std::span<const double> dx, int k) {
  const double dql = q[k] - q[k - 1];
  const double dqr = q[k + 1] - q[k];
  if (dqr * dql <= 0.0) return 0.0;
  const double dq =
      dx[k] / (dx[k - 1] + dx[k] + dx[k + 1]) *
      ((2.0 * dx[k - 1] + dx[k]) / (dx[k + 1] + dx[k]) * dqr +
       (dx[k] + 2.0 * dx[k + 1]) / (dx[k - 1] + dx[k]) * dql);
  const double lim = 2.0 * std::min(std::abs(dql), std::abs(dqr));
  return std::copysign(std::min(std::abs(dq), lim), dq);
}

ZoneParabola flat(double q) { return {q, q, q, 0.0}; }

// Fast magnetosonic speed in the strip frame from total field components.
double fast_speed_strip(double rho, double p, double btn, double btt1,
                        double btt2, const Constants& c) {
  const double a2 = c.gamma * p / rho;
  const double ca2 = (btn * btn + btt1 * btt1 + btt2 * btt2) / (c.mu0 * rho);
  const double can2 = btn * btn / (c.mu0 * rho);
  const double sum = a2 + ca2;
  const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * a2 * can2));
  return std::sqrt(0.5 * (sum + disc));
}

StripState prim_to_cons_strip(const StripState& w, const Constants& c) {
  StripState u;
  u[kRho] = w[kRho];
  u[kUn] = w[kRho] * w[kUn];
  u[kUt1] = w[kRho] * w[kUt1];
  u[kUt2] = w[kRho] * w[kUt2];
  u[kBn] = w[kBn];
  u[kBt1] = w[kBt1];
  u[kBt2] = w[kBt2];
  u[kPE] = w[kPE] / (c.gamma - 1.0) +
           0.5 * w[kRho] * (w[kUn] * w[kUn] + w[kUt1] * w[kUt1] + w[kUt2] * w[kUt2]) +
           (w[kBn] * w[kBn] + w[kBt1] * w[kBt1] + w[kBt2] * w[kBt2]) / (2.0 * c.mu0);
  return u;
}

// Everything the sweep shares between the Lagrangian phase and the remap.
struct SweepWork {
  std::vector<StripState> prim;                       // strip-frame primitives
  std::vector<StripState> cons;                       // strip-frame conserved
  std::array<std::vector<ZoneParabola>, 8> cons_par;  // carried for the remap
  LagrangianStrip lag;
};

// Interface solve: traced left/right edge states feed a linearized two-state
// Lagrangian MHD problem; fast-wave impedances set the normal jump, Alfven
// impedances the transverse one.
struct EdgeSolution {
  double ustar, pstar_eff, bn, vt1, vt2, bt1, bt2;
};

EdgeSolution solve_edge(const StripState& ql, const StripState& qr,
                        const Vec3& bd_l, const Vec3& bd_r, int direction,
                        const Constants& c) {
  const int a = direction, b = (direction + 1) % 3, d = (direction + 2) % 3;
  const double wl = ql[kRho] * fast_speed_strip(ql[kRho], ql[kPE], ql[kBn] + bd_l[a],
                                                ql[kBt1] + bd_l[b], ql[kBt2] + bd_l[d], c);
  const double wr = qr[kRho] * fast_speed_strip(qr[kRho], qr[kPE], qr[kBn] + bd_r[a],
                                                qr[kBt1] + bd_r[b], qr[kBt2] + bd_r[d], c);
  const double pl = ql[kPE] + (ql[kBt1] * ql[kBt1] + ql[kBt2] * ql[kBt2] -
                               ql[kBn] * ql[kBn]) / (2.0 * c.mu0);
  const double pr = qr[kPE] + (qr[kBt1] * qr[kBt1] + qr[kBt2] * qr[kBt2] -
                               qr[kBn] * qr[kBn]) / (2.0 * c.mu0);
  EdgeSolution e;
  const double wsum = wl + wr;
  e.ustar = (wl * ql[kUn] + wr * qr[kUn] + pl - pr) / wsum;
  e.pstar_eff = (wr * pl + wl * pr + wl * wr * (ql[kUn] - qr[kUn])) / wsum;
  e.bn = 0.5 * (ql[kBn] + qr[kBn]);

  const double s = e.bn < 0.0 ? -1.0 : 1.0;
  const double al = 1.0 / std::sqrt(c.mu0 * ql[kRho]);
  const double ar = 1.0 / std::sqrt(c.mu0 * qr[kRho]);
  const double asum = al + ar;
  e.bt1 = (s * (qr[kUt1] - ql[kUt1]) + ar * qr[kBt1] + al * ql[kBt1]) / asum;
  e.bt2 = (s * (qr[kUt2] - ql[kUt2]) + ar * qr[kBt2] + al * ql[kBt2]) / asum;
  e.vt1 = ql[kUt1] + s * al * (e.bt1 - ql[kBt1]);
  e.vt2 = ql[kUt2] + s * al * (e.bt2 - ql[kBt2]);
  return e;
}

StripState edge_flux(const EdgeSolution& e, const Constants& c) {
  StripState f;
  f[kRho] = 0.0;
  f[kUn] = e.pstar_eff;
  f[kUt1] = -e.bn * e.bt1 / c.mu0;
  f[kUt2] = -e.bn * e.bt2 / c.mu0;
  f[kBn] = -e.ustar * e.bn;
  f[kBt1] = -e.bn * e.vt1;
  f[kBt2] = -e.bn * e.vt2;
  f[kPE] = e.pstar_eff * e.ustar - e.bn * (e.vt1 * e.bt1 + e.vt2 * e.bt2) / c.mu0;
  return f;
}

SweepWork lagrangian_phase(const Strip1D& strip, double dt, int direction,
                           const Constants& c) {
  const int nn = strip.total();
  const int a = direction;
  SweepWork w;
  w.prim.resize(nn);
  w.cons.resize(nn);
  std::vector<double> cf(nn);
  for (int i = 0; i < nn; ++i) {
    w.prim[i] = to_strip_prim(strip.states[i], direction);
    w.cons[i] = prim_to_cons_strip(w.prim[i], c);
    cf[i] = fast_speed(strip.states[i], a, c, strip.bd_at(i));
  }

  std::array<std::vector<ZoneParabola>, 8> prim_par;
  std::vector<double> scratch(nn);
  for (int v = 0; v < 8; ++v) {
    for (int i = 0; i < nn; ++i) scratch[i] = w.prim[i][v];
    prim_par[v] = reconstruct(scratch, strip.spacings);
    for (int i = 0; i < nn; ++i) scratch[i] = w.cons[i][v];
    w.cons_par[v] = reconstruct(scratch, strip.spacings);
  }

  // Traced edge states: average each parabola over the span the fastest wave
  // crosses during dt on its side of the interface.
  auto traced = [&](int zone, bool right_edge) {
    const double sigma =
        std::clamp(cf[zone] * dt / strip.spacings[zone], 0.0, 1.0);
    StripState q;
    for (int v = 0; v < 8; ++v)
      q[v] = right_edge ? prim_par[v][zone].avg_right(sigma)
                        : prim_par[v][zone].avg_left(sigma);
    if (!(q[kRho] > 0.0) || !(q[kPE] > 0.0)) q = w.prim[zone];
    return q;
  };

  const int first_edge = 3, last_edge = nn - 2;
  std::vector<StripState> flux(nn + 1);
  LagrangianStrip& lag = w.lag;
  lag.edge_velocity.assign(nn + 1, 0.0);
  lag.edge_position.assign(nn + 1, 0.0);
  for (int m = first_edge; m <= last_edge; ++m) {
    const EdgeSolution e = solve_edge(traced(m - 1, true), traced(m, false),
                                      strip.bd_at(m - 1), strip.bd_at(m),
                                      direction, c);
    lag.edge_velocity[m] = e.ustar;
    flux[m] = edge_flux(e, c);
  }

  lag.first_zone = first_edge;
  lag.last_zone = last_edge - 1;
  lag.cons.assign(nn, StripState{});
  lag.widths.assign(nn, 0.0);
  // Edge positions relative to the strip start; only differences matter.
  double pos = 0.0;
  std::vector<double> fixed_edges(nn + 1);
  for (int i = 0; i < nn; ++i) {
    fixed_edges[i] = pos;
    pos += strip.spacings[i];
  }
  fixed_edges[nn] = pos;
  for (int m = first_edge; m <= last_edge; ++m)
    lag.edge_position[m] = fixed_edges[m] + lag.edge_velocity[m] * dt;

  for (int k = lag.first_zone; k <= lag.last_zone; ++k) {
    const double dx0 = strip.spacings[k];
    const double dxp = dx0 + dt * (lag.edge_velocity[k + 1] - lag.edge_velocity[k]);
    if (!(dxp > 0.0))
      throw StepRejected("Lagrangian interfaces crossed at zone " + std::to_string(k));
    const double shrink = dx0 / dxp;
    for (int v = 0; v < 8; ++v)
      lag.cons[k][v] = w.cons[k][v] * shrink - dt * (flux[k + 1][v] - flux[k][v]) / dxp;
    lag.widths[k] = dxp;
    if (c.pressure_floor <= 0.0) {
      const StripState& u = lag.cons[k];
      const double internal =
          u[kPE] -
          0.5 * (u[kUn] * u[kUn] + u[kUt1] * u[kUt1] + u[kUt2] * u[kUt2]) / u[kRho] -
          (u[kBn] * u[kBn] + u[kBt1] * u[kBt1] + u[kBt2] * u[kBt2]) / (2.0 * c.mu0);
      if (!(u[kRho] > 0.0) || !(internal > 0.0))
        throw UnphysicalState("negative density or pressure after Lagrangian step at zone " +
                              std::to_string(k));
    }
  }
  return w;
}

}  // namespace

std::vector<ZoneParabola> reconstruct(std::span<const double> q,
                                      std::span<const double> dx) {
  const int nn = static_cast<int>(q.size());
  std::vector<ZoneParabola> par(nn);
  if (nn < 5) {
    for (int i = 0; i < nn; ++i) par[i] = flat(q[i]);
    return par;
  }
  std::vector<double> dm(nn, 0.0);
  for (int k = 1; k + 1 < nn; ++k) dm[k] = limited_slope(q, dx, k);

  // Interface values, edge m between zones m-1 and m (CW84 nonuniform form).
  std::vector<double> qf(nn + 1, 0.0);
  for (int m = 2; m + 1 < nn; ++m) {
    const int i = m - 1;
    const double dqr = q[i + 1] - q[i];
    const double span = dx[i - 1] + dx[i] + dx[i + 1] + dx[i + 2];
    qf[m] = q[i] + dx[i] / (dx[i] + dx[i + 1]) * dqr +
            (1.0 / span) *
                (2.0 * dx[i + 1] * dx[i] / (dx[i] + dx[i + 1]) *
                     ((dx[i - 1] + dx[i]) / (2.0 * dx[i] + dx[i + 1]) -
                      (dx[i + 2] + dx[i + 1]) / (2.0 * dx[i + 1] + dx[i])) *
                     dqr -
                 dx[i] * (dx[i - 1] + dx[i]) / (2.0 * dx[i] + dx[i + 1]) * dm[i + 1] +
                 dx[i + 1] * (dx[i + 1] + dx[i + 2]) / (dx[i] + 2.0 * dx[i + 1]) * dm[i]);
  }

  for (int k = 0; k < nn; ++k) {
    if (k < 2 || k >= nn - 2) {
      par[k] = flat(q[k]);
      continue;
    }
    double al = qf[k], ar = qf[k + 1];
    const double av = q[k];
    if ((ar - av) * (av - al) <= 0.0) {
      al = ar = av;  // local extremum: flatten
    } else {
      const double d = ar - al;
      const double t = d * (av - 0.5 * (al + ar));
      if (t > d * d / 6.0)
        al = 3.0 * av - 2.0 * ar;
      else if (t < -d * d / 6.0)
        ar = 3.0 * av - 2.0 * al;
    }
    par[k] = {al, ar, av, 6.0 * (av - 0.5 * (al + ar))};
  }
  return par;
}

LagrangianStrip lagrangian_step(const Strip1D& strip, double dt, int direction,
                                const Constants& c) {
  return lagrangian_phase(strip, dt, direction, c).lag;
}

RemapResult remap(const LagrangianStrip& lag, std::span<const double> eulerian_edges) {
  RemapResult out;
  const int nn = static_cast<int>(lag.cons.size());
  if (static_cast<int>(eulerian_edges.size()) != nn + 1)
    throw InvalidSpec("remap: edge array size mismatch");
  for (int m = lag.first_zone + 1; m <= lag.last_zone; ++m)
    if (!(lag.edge_position[m] > lag.edge_position[m - 1]))
      throw StepRejected("remap: moved interfaces are not strictly increasing at edge " +
                         std::to_string(m));
  const double extent_l = lag.edge_position[lag.first_zone];
  const double extent_r = lag.edge_position[lag.last_zone + 1];
  const double span = extent_r - extent_l;
  // Offsets between the meshes must stay local: each end edge displacement is
  // bounded by a zone width (CFL), enforced per-sliver below.
  (void)span;

  // Parabolas rebuilt on the moved mesh for every conserved component.
  std::array<std::vector<ZoneParabola>, 8> par;
  std::vector<double> vals(nn), widths(nn, 1.0);
  for (int k = lag.first_zone; k <= lag.last_zone; ++k) widths[k] = lag.widths[k];
  for (int v = 0; v < 8; ++v) {
    for (int k = 0; k < nn; ++k) vals[k] = lag.cons[k][v];
    par[v] = reconstruct(vals, widths);
  }

  out.first_zone = std::max(lag.first_zone + 3, 0);
  out.last_zone = lag.last_zone - 3;
  out.cons.assign(nn, StripState{});

  auto sliver = [&](int m, int v) -> double {
    const double delta = lag.edge_position[m] - eulerian_edges[m];
    if (delta == 0.0) return 0.0;
    if (delta > 0.0) {
      const int k = m - 1;
      if (delta > lag.widths[k])
        throw StepRejected("remap: interface displacement exceeds zone width");
      return delta * par[v][k].avg_right(delta / lag.widths[k]);
    }
    const int k = m;
    if (-delta > lag.widths[k])
      throw StepRejected("remap: interface displacement exceeds zone width");
    return delta * par[v][k].avg_left(-delta / lag.widths[k]);
  };

  for (int j = out.first_zone; j <= out.last_zone; ++j) {
    const double dxe = eulerian_edges[j + 1] - eulerian_edges[j];
    const double scale = lag.widths[j] / dxe;
    for (int v = 0; v < 8; ++v)
      out.cons[j][v] = lag.cons[j][v] * scale + (sliver(j, v) - sliver(j + 1, v)) / dxe;
  }
  return out;
}

double strip_max_dt(const Strip1D& strip, int direction, const Constants& c) {
  double dt = std::numeric_limits<double>::infinity();
  for (int i = strip.ghost; i < strip.ghost + strip.n; ++i) {
    const double cf = fast_speed(strip.states[i], direction, c, strip.bd_at(i));
    const double speed = std::abs(strip.states[i].v[direction]) + cf;
    dt = std::min(dt, strip.spacings[i] / speed);
  }
  return dt;
}

void sweep_1d(Strip1D& strip, double dt, int direction, const Constants& c) {
  const int nn = strip.total();
  SweepWork w = lagrangian_phase(strip, dt, direction, c);
  const LagrangianStrip& lag = w.lag;

  // Remap slivers use the sweep's own Eulerian parabolas carried onto the
  // moved zones (shape kept, mean shifted to the Lagrangian average). This
  // keeps the interior update within the 4-cell ghost stencil.
  auto sliver = [&](int m, int v) -> double {
    const double delta = lag.edge_velocity[m] * dt;
    if (delta == 0.0) return 0.0;
    if (delta > 0.0) {
      const int k = m - 1;
      const double carried = w.cons_par[v][k].avg_right(delta / lag.widths[k]) +
                             (lag.cons[k][v] - w.cons[k][v]);
      return delta * carried;
    }
    const int k = m;
    const double carried = w.cons_par[v][k].avg_left(-delta / lag.widths[k]) +
                           (lag.cons[k][v] - w.cons[k][v]);
    return delta * carried;
  };

  for (int j = strip.ghost; j < strip.ghost + strip.n; ++j) {
    const double dxe = strip.spacings[j];
    const double scale = lag.widths[j] / dxe;
    StripState u;
    for (int v = 0; v < 8; ++v)
      u[v] = lag.cons[j][v] * scale + (sliver(j, v) - sliver(j + 1, v)) / dxe;
    ConservedState cs;
    cs.rho = u[kRho];
    const int a = direction, b = (direction + 1) % 3, d = (direction + 2) % 3;
    cs.mom[a] = u[kUn];
    cs.mom[b] = u[kUt1];
    cs.mom[d] = u[kUt2];
    cs.bprime[a] = u[kBn];
    cs.bprime[b] = u[kBt1];
    cs.bprime[d] = u[kBt2];
    cs.energy = u[kPE];
    try {
      strip.states[j] = cons_to_prim(cs, c);
    } catch (const UnphysicalState& e) {
      throw UnphysicalState(std::string(e.what()) + " at strip cell " +
                            std::to_string(j - strip.ghost));
    }
  }
  (void)nn;
}

StripState to_strip_prim(const PrimitiveState& s, int direction) {
  const int a = direction, b = (direction + 1) % 3, d = (direction + 2) % 3;
  return {s.rho, s.v[a], s.v[b], s.v[d], s.bprime[a], s.bprime[b], s.bprime[d], s.p};
}

PrimitiveState from_strip_prim(const StripState& w, int direction) {
  const int a = direction, b = (direction + 1) % 3, d = (direction + 2) % 3;
  PrimitiveState s;
  s.rho = w[kRho];
  s.v[a] = w[kUn];
  s.v[b] = w[kUt1];
  s.v[d] = w[kUt2];
  s.bprime[a] = w[kBn];
  s.bprime[b] = w[kBt1];
  s.bprime[d] = w[kBt2];
  s.p = w[kPE];
  return s;
}

}  // namespace ppmlr
