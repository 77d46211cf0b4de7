#pragma once

#include <array>
#include <span>
#include <vector>

#include "ppmlr/physics.hpp"

namespace ppmlr {

// Limited parabola over one zone in local coordinate xi in [0, 1].
struct ZoneParabola {
  double left = 0.0, right = 0.0, avg = 0.0, six = 0.0;

  double delta() const { return right - left; }
  double value(double xi) const {
    return left + xi * (delta() + six * (1.0 - xi));
  }
  // Mean over [0, sigma] of the zone, sigma in [0, 1].
  double avg_left(double sigma) const {
    return left + 0.5 * sigma * (delta() + (1.0 - 2.0 * sigma / 3.0) * six);
  }
  // Mean over [1 - sigma, 1].
  double avg_right(double sigma) const {
    return right - 0.5 * sigma * (delta() - (1.0 - 2.0 * sigma / 3.0) * six);
  }
};

// Piecewise-parabolic reconstruction with the Colella-Woodward monotonicity
// limiter on a nonuniform mesh. Returns one parabola per zone; entries for
// zones [2, N-2) carry the full interpolation, the outermost two zones per
// side are filled with flat parabolas (callers must not consume them).
std::vector<ZoneParabola> reconstruct(std::span<const double> q,
                                      std::span<const double> dx);

// One sweep line through a block: interior cells plus ghost shells.
struct Strip1D {
  int n = 0;      // interior cells
  int ghost = 4;  // cells each side, >= 4
  std::vector<double> spacings;        // n + 2 ghost
  std::vector<PrimitiveState> states;  // n + 2 ghost
  std::vector<Vec3> bd;                // dipole field samples; empty means zero

  int total() const { return n + 2 * ghost; }
  Vec3 bd_at(int i) const { return bd.empty() ? Vec3{} : bd[i]; }
};

// Strip-frame component order used by the 1D kernel. Slot 7 holds pressure
// for primitives and total energy for conserved values.
enum StripVar { kRho = 0, kUn, kUt1, kUt2, kBn, kBt1, kBt2, kPE };
using StripState = std::array<double, 8>;

// Result of the Lagrangian phase: conserved densities on the moved mesh.
// Zones [first_zone, last_zone] and edges [first_zone, last_zone + 1] are
// valid; edge m sits between zones m-1 and m.
struct LagrangianStrip {
  int first_zone = 0, last_zone = -1;
  std::vector<StripState> cons;        // strip-frame conserved densities
  std::vector<double> widths;          // moved zone widths
  std::vector<double> edge_velocity;   // interface normal velocity u*
  std::vector<double> edge_position;   // moved edge coordinates
};

// Reconstructs, traces edge states over the fast-wave domain of dependence,
// solves the two-state interface problem and advances zones in mass
// coordinates. direction selects which velocity/B components are normal.
LagrangianStrip lagrangian_step(const Strip1D& strip, double dt, int direction,
                                const Constants& c);

struct RemapResult {
  int first_zone = 0, last_zone = -1;
  std::vector<StripState> cons;  // averages on the Eulerian mesh
};

// Conservative remap of Lagrangian zone data back onto the fixed mesh given
// by eulerian_edges: parabolas are rebuilt on the moved mesh and integrated
// exactly over each Eulerian cell. Unmoved interfaces reproduce the input
// bitwise.
RemapResult remap(const LagrangianStrip& lag,
                  std::span<const double> eulerian_edges);

// Largest stable dt for the strip: min over cells of dx / (|u_n| + c_f).
double strip_max_dt(const Strip1D& strip, int direction, const Constants& c);

// Full 1D update of the strip interior: reconstruct -> Lagrangian -> remap.
// The remap reuses the sweep's own reconstruction carried onto the moved
// zones, which keeps the whole update inside the 4-cell ghost stencil.
void sweep_1d(Strip1D& strip, double dt, int direction, const Constants& c);

// Conversions between 3-D states and the strip component frame for a sweep
// along `direction` (normal first, then the two cyclic transverse axes).
StripState to_strip_prim(const PrimitiveState& s, int direction);
PrimitiveState from_strip_prim(const StripState& w, int direction);

}  // namespace ppmlr
