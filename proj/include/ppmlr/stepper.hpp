#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ppmlr/decomp.hpp"
#include "ppmlr/grid.hpp"
#include "ppmlr/physics.hpp"

namespace ppmlr {

struct SolarWindParams {
  double rho_sw = 1.0;
  double p_sw = 0.1;
  Vec3 v_sw{-1.0, 0.0, 0.0};  // sunward-to-tailward flow
  Vec3 imf{0.0, 0.0, 0.0};
};

// Spherically symmetric initial plasma profiles inside the magnetosphere:
// rho(r) = rho_core (r_ref/r)^falloff (clamped at r_ref), same form for p.
struct InitialProfiles {
  double rho_core = 1.0;
  double p_core = 0.1;
  double falloff = 3.0;
  double r_ref = 3.0;
};

enum class BoundaryMode { Outflow, Periodic, Magnetosphere };

// Field data of one worker's subdomain, ghost shells included. Local cell
// coordinates run over [-ghost, n+ghost) per axis.
struct BlockState {
  std::array<int, 3> lo{};  // global index of the first interior cell
  std::array<int, 3> n{};   // interior cells per axis
  int ghost = 4;
  std::array<std::vector<double>, 3> centers;   // local, ghost-inclusive
  std::array<std::vector<double>, 3> spacings;  // local, ghost-inclusive
  std::array<std::array<bool, 2>, 3> physical{};  // face at the domain boundary
  std::vector<PrimitiveState> fields;
  std::vector<Vec3> bd;  // dipole field at cell centers, fixed after init
  std::vector<std::pair<int, PrimitiveState>> frozen_core;  // inner-boundary cells
  double time = 0.0;
  long step_count = 0;

  int span(int a) const { return n[a] + 2 * ghost; }
  int index(int i, int j, int k) const {
    return (i + ghost) + span(0) * ((j + ghost) + span(1) * (k + ghost));
  }
  PrimitiveState& at(int i, int j, int k) { return fields[index(i, j, k)]; }
  const PrimitiveState& at(int i, int j, int k) const { return fields[index(i, j, k)]; }
  Vec3 center(int i, int j, int k) const {
    return {centers[0][i + ghost], centers[1][j + ghost], centers[2][k + ghost]};
  }
};

// Allocates the block for one layout entry (or the whole grid), extends the
// axis coordinates into the ghost shells and precomputes B_d when asked.
BlockState make_block(const StretchedGrid& grid, const BlockInfo& info, int ghost,
                      const Constants& c, bool with_dipole);
BlockState make_whole_domain_block(const StretchedGrid& grid, int ghost,
                                   const Constants& c, bool with_dipole);

// Magnetosphere start state: mirror-dipole B' and radial profiles for
// x <= 15 R_E, uniform solar wind with B' = imf - B_d beyond; cells inside
// r = 3 R_E are recorded as the frozen inner boundary.
void init_magnetosphere(BlockState& block, const SolarWindParams& sw,
                        const InitialProfiles& prof, const Constants& c);

void init_uniform(BlockState& block, const PrimitiveState& s);

// cfl * min over interior cells and axes of dx / (|v| + c_f).
double compute_dt(const BlockState& block, double cfl, const Constants& c);

// B_d coupling terms: momentum (curl B')xB_d, induction curl(v x B_d) -
// v div B', and the matching energy products, via second-order central
// differences on the nonuniform mesh. Needs one ghost layer.
void apply_sources(BlockState& block, double dt, const Constants& c);

// Fills ghost shells of physical faces. The sunward face (+x) holds the
// fixed solar-wind state in Magnetosphere mode; everything else is
// zero-gradient outflow. Periodic wrap is only valid for whole-axis blocks.
void apply_boundaries(BlockState& block, BoundaryMode mode, const SolarWindParams& sw,
                      const Constants& c);

// One directional pass: every interior strip along `axis` is advanced by the
// 1D kernel. Ghosts along `axis` must be current.
void sweep_axis(BlockState& block, int axis, double dt, const Constants& c);

// Restores the recorded inner-boundary cells bitwise.
void restore_frozen_core(BlockState& block);

// Sweep order for a step: XYZ on even steps, ZYX on odd ones.
std::array<int, 3> sweep_order(long step);

// Full step for a single whole-domain block: per-axis boundary fill + sweep,
// then sources and the frozen core, advancing time.
void step_single_block(BlockState& block, double dt, BoundaryMode mode,
                       const SolarWindParams& sw, const Constants& c,
                       bool with_sources = true);

}  // namespace ppmlr
