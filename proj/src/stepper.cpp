#include "ppmlr/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppmlr/errors.hpp"
#include "ppmlr/ppm1d.hpp"

namespace ppmlr {

namespace {

// Extends axis coordinates into the ghost shell: real cells where the grid
// continues, replicated end spacing past the physical boundary.
void local_axis(const Axis& axis, int lo, int n, int ghost,
                std::vector<double>& centers, std::vector<double>& spacings) {
  const int span = n + 2 * ghost;
  centers.assign(span, 0.0);
  spacings.assign(span, 0.0);
  for (int i = 0; i < span; ++i) {
    const int g = lo + i - ghost;  // global cell index
    if (g >= 0 && g < axis.n()) {
      centers[i] = axis.centers[g];
      spacings[i] = axis.spacings[g];
    }
  }
  for (int i = ghost - 1; i >= 0; --i) {
    if (lo + i - ghost >= 0) continue;
    spacings[i] = spacings[i + 1];
    centers[i] = centers[i + 1] - 0.5 * (spacings[i] + spacings[i + 1]);
  }
  for (int i = span - ghost; i < span; ++i) {
    if (lo + i - ghost < axis.n()) continue;
    spacings[i] = spacings[i - 1];
    centers[i] = centers[i - 1] + 0.5 * (spacings[i] + spacings[i - 1]);
  }
}

// Nonuniform second-order central derivative from three center values.
double central_diff(double fm, double f0, double fp, double hm, double hp) {
  return (hm * hm * fp + (hp * hp - hm * hm) * f0 - hp * hp * fm) /
         (hm * hp * (hm + hp));
}

}  // namespace

BlockState make_block(const StretchedGrid& grid, const BlockInfo& info, int ghost,
                      const Constants& c, bool with_dipole) {
  BlockState b;
  b.lo = info.lo;
  b.n = info.n;
  b.ghost = ghost;
  for (int a = 0; a < 3; ++a) {
    local_axis(grid.axis(a), info.lo[a], info.n[a], ghost, b.centers[a], b.spacings[a]);
    b.physical[a][0] = info.neighbor[2 * a] < 0;
    b.physical[a][1] = info.neighbor[2 * a + 1] < 0;
  }
  const std::size_t cells =
      static_cast<std::size_t>(b.span(0)) * b.span(1) * b.span(2);
  b.fields.assign(cells, PrimitiveState{1.0, {}, {}, 1.0});
  b.bd.assign(cells, Vec3{});
  if (with_dipole) {
    for (int k = -ghost; k < b.n[2] + ghost; ++k)
      for (int j = -ghost; j < b.n[1] + ghost; ++j)
        for (int i = -ghost; i < b.n[0] + ghost; ++i)
          b.bd[b.index(i, j, k)] = dipole_field(b.center(i, j, k), c);
  }
  return b;
}

BlockState make_whole_domain_block(const StretchedGrid& grid, int ghost,
                                   const Constants& c, bool with_dipole) {
  BlockInfo info;
  info.rank = 0;
  info.lo = {0, 0, 0};
  info.n = {grid.x.n(), grid.y.n(), grid.z.n()};
  info.neighbor = {-1, -1, -1, -1, -1, -1};
  return make_block(grid, info, ghost, c, with_dipole);
}

void init_magnetosphere(BlockState& block, const SolarWindParams& sw,
                        const InitialProfiles& prof, const Constants& c) {
  block.frozen_core.clear();
  for (int k = -block.ghost; k < block.n[2] + block.ghost; ++k)
    for (int j = -block.ghost; j < block.n[1] + block.ghost; ++j)
      for (int i = -block.ghost; i < block.n[0] + block.ghost; ++i) {
        const Vec3 pos = block.center(i, j, k);
        const int idx = block.index(i, j, k);
        PrimitiveState s;
        if (pos.x <= 15.0) {
          const double r = std::max(norm(pos), 1e-6);
          const double shape = std::pow(prof.r_ref / std::max(r, prof.r_ref),
                                        prof.falloff);
          s.rho = prof.rho_core * shape;
          s.p = prof.p_core * shape;
          s.v = {};
          s.bprime = mirror_dipole_field(pos, c);
        } else {
          s.rho = sw.rho_sw;
          s.p = sw.p_sw;
          s.v = sw.v_sw;
          s.bprime = sw.imf - block.bd[idx];
        }
        block.fields[idx] = s;
        const bool interior = i >= 0 && i < block.n[0] && j >= 0 && j < block.n[1] &&
                              k >= 0 && k < block.n[2];
        if (interior && norm(pos) < 3.0)
          block.frozen_core.emplace_back(idx, s);
      }
}

void init_uniform(BlockState& block, const PrimitiveState& s) {
  std::fill(block.fields.begin(), block.fields.end(), s);
  block.frozen_core.clear();
}

double compute_dt(const BlockState& block, double cfl, const Constants& c) {
  double dt = std::numeric_limits<double>::infinity();
  for (int k = 0; k < block.n[2]; ++k)
    for (int j = 0; j < block.n[1]; ++j)
      for (int i = 0; i < block.n[0]; ++i) {
        const int idx = block.index(i, j, k);
        const PrimitiveState& s = block.fields[idx];
        const int local[3] = {i + block.ghost, j + block.ghost, k + block.ghost};
        for (int a = 0; a < 3; ++a) {
          const double cf = fast_speed(s, a, c, block.bd[idx]);
          const double speed = std::abs(s.v[a]) + cf;
          const double cand = block.spacings[a][local[a]] / speed;
          if (!std::isfinite(cand))
            throw UnphysicalState("non-finite signal speed at cell (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
          dt = std::min(dt, cand);
        }
      }
  return cfl * dt;
}

void apply_sources(BlockState& block, double dt, const Constants& c) {
  const int g = block.ghost;
  std::vector<ConservedState> updated(block.fields.size());
  for (int k = 0; k < block.n[2]; ++k)
    for (int j = 0; j < block.n[1]; ++j)
      for (int i = 0; i < block.n[0]; ++i) {
        const int idx = block.index(i, j, k);
        const PrimitiveState& s = block.fields[idx];

        // grad_b[a][c] = d B'_c / d x_a, grad_e[a][c] = d (v x B_d)_c / d x_a
        double grad_b[3][3], grad_e[3][3];
        for (int a = 0; a < 3; ++a) {
          int im[3] = {i, j, k}, ip[3] = {i, j, k};
          im[a] -= 1;
          ip[a] += 1;
          const int idm = block.index(im[0], im[1], im[2]);
          const int idp = block.index(ip[0], ip[1], ip[2]);
          const int lc = (a == 0 ? i : (a == 1 ? j : k)) + g;
          const double hm = block.centers[a][lc] - block.centers[a][lc - 1];
          const double hp = block.centers[a][lc + 1] - block.centers[a][lc];
          const Vec3 em = cross(block.fields[idm].v, block.bd[idm]);
          const Vec3 e0 = cross(s.v, block.bd[idx]);
          const Vec3 ep = cross(block.fields[idp].v, block.bd[idp]);
          for (int comp = 0; comp < 3; ++comp) {
            grad_b[a][comp] = central_diff(block.fields[idm].bprime[comp],
                                           s.bprime[comp],
                                           block.fields[idp].bprime[comp], hm, hp);
            grad_e[a][comp] = central_diff(em[comp], e0[comp], ep[comp], hm, hp);
          }
        }
        const Vec3 curl_b{grad_b[1][2] - grad_b[2][1], grad_b[2][0] - grad_b[0][2],
                          grad_b[0][1] - grad_b[1][0]};
        const Vec3 curl_e{grad_e[1][2] - grad_e[2][1], grad_e[2][0] - grad_e[0][2],
                          grad_e[0][1] - grad_e[1][0]};
        const double div_b = grad_b[0][0] + grad_b[1][1] + grad_b[2][2];

        const Vec3 s_mom = cross(curl_b, block.bd[idx]) / c.mu0;
        const Vec3 s_ind = curl_e - div_b * s.v;
        const double s_energy =
            dot(s.v, s_mom) + dot(s.bprime, curl_e) / c.mu0;

        ConservedState u = prim_to_cons(s, c);
        u.mom += dt * s_mom;
        u.bprime += dt * s_ind;
        u.energy += dt * s_energy;
        updated[idx] = u;
      }
  for (int k = 0; k < block.n[2]; ++k)
    for (int j = 0; j < block.n[1]; ++j)
      for (int i = 0; i < block.n[0]; ++i) {
        const int idx = block.index(i, j, k);
        try {
          block.fields[idx] = cons_to_prim(updated[idx], c);
        } catch (const UnphysicalState& e) {
          throw UnphysicalState(std::string(e.what()) + " after sources at cell (" +
                                std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ")");
        }
      }
}

void apply_boundaries(BlockState& block, BoundaryMode mode, const SolarWindParams& sw,
                      const Constants&) {
  const int g = block.ghost;
  for (int a = 0; a < 3; ++a) {
    if (mode == BoundaryMode::Periodic) {
      if (block.physical[a][0] != block.physical[a][1] ||
          (block.physical[a][0] && block.n[a] < g))
        throw InvalidSpec("periodic boundaries need whole-axis blocks");
    }
    for (int side = 0; side < 2; ++side) {
      if (!block.physical[a][side]) continue;
      // Ghost layers of this face over the interior span of the other axes.
      const int nb = block.n[(a + 1) % 3], nc = block.n[(a + 2) % 3];
      for (int t2 = 0; t2 < nc; ++t2)
        for (int t1 = 0; t1 < nb; ++t1)
          for (int layer = 1; layer <= g; ++layer) {
            int cell[3], src[3];
            cell[(a + 1) % 3] = src[(a + 1) % 3] = t1;
            cell[(a + 2) % 3] = src[(a + 2) % 3] = t2;
            cell[a] = side == 0 ? -layer : block.n[a] - 1 + layer;
            switch (mode) {
              case BoundaryMode::Periodic:
                src[a] = side == 0 ? block.n[a] - layer : layer - 1;
                block.at(cell[0], cell[1], cell[2]) = block.at(src[0], src[1], src[2]);
                break;
              case BoundaryMode::Magnetosphere:
                if (a == 0 && side == 1) {  // sunward inflow
                  const int idx = block.index(cell[0], cell[1], cell[2]);
                  PrimitiveState s;
                  s.rho = sw.rho_sw;
                  s.p = sw.p_sw;
                  s.v = sw.v_sw;
                  s.bprime = sw.imf - (block.bd.empty() ? Vec3{} : block.bd[idx]);
                  block.fields[idx] = s;
                  break;
                }
                [[fallthrough]];
              case BoundaryMode::Outflow:
                src[a] = side == 0 ? 0 : block.n[a] - 1;
                block.at(cell[0], cell[1], cell[2]) = block.at(src[0], src[1], src[2]);
                break;
            }
          }
    }
  }
}

void sweep_axis(BlockState& block, int axis, double dt, const Constants& c) {
  const int g = block.ghost;
  const int b = (axis + 1) % 3, d = (axis + 2) % 3;
  Strip1D strip;
  strip.n = block.n[axis];
  strip.ghost = g;
  const int total = strip.total();
  strip.spacings.assign(block.spacings[axis].begin(), block.spacings[axis].end());
  strip.states.resize(total);
  strip.bd.resize(total);
  for (int t2 = 0; t2 < block.n[d]; ++t2)
    for (int t1 = 0; t1 < block.n[b]; ++t1) {
      int cell[3];
      cell[b] = t1;
      cell[d] = t2;
      for (int i = -g; i < block.n[axis] + g; ++i) {
        cell[axis] = i;
        const int idx = block.index(cell[0], cell[1], cell[2]);
        strip.states[i + g] = block.fields[idx];
        strip.bd[i + g] = block.bd[idx];
      }
      try {
        sweep_1d(strip, dt, axis, c);
      } catch (const Error& e) {
        throw UnphysicalState(std::string(e.what()) + " in sweep axis " +
                              std::to_string(axis) + " at line (" + std::to_string(t1) +
                              "," + std::to_string(t2) + ")");
      }
      for (int i = 0; i < block.n[axis]; ++i) {
        cell[axis] = i;
        block.fields[block.index(cell[0], cell[1], cell[2])] = strip.states[i + g];
      }
    }
}

void restore_frozen_core(BlockState& block) {
  for (const auto& [idx, state] : block.frozen_core) block.fields[idx] = state;
}

std::array<int, 3> sweep_order(long step) {
  return step % 2 == 0 ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{2, 1, 0};
}

void step_single_block(BlockState& block, double dt, BoundaryMode mode,
                       const SolarWindParams& sw, const Constants& c,
                       bool with_sources) {
  for (int axis : sweep_order(block.step_count)) {
    apply_boundaries(block, mode, sw, c);
    sweep_axis(block, axis, dt, c);
  }
  if (with_sources) {
    apply_boundaries(block, mode, sw, c);
    apply_sources(block, dt, c);
  }
  restore_frozen_core(block);
  block.time += dt;
  block.step_count += 1;
}

}  // namespace ppmlr
