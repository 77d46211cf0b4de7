#pragma once

#include <vector>

namespace ppmlr {

// One axis of the stretched Cartesian mesh: a uniform core surrounded by
// geometrically stretched segments that close each side of the domain exactly.
struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  double uniform_lo = 0.0;  // start of the uniform core
  double uniform_hi = 0.0;  // end of the uniform core
  double d_uniform = 0.0;   // spacing inside the core
  int target_cells = 0;     // total cells over [min, max]
  double nominal_ratio = 1.05;
};

struct Axis {
  std::vector<double> edges;     // n + 1, strictly increasing
  std::vector<double> centers;   // n
  std::vector<double> spacings;  // n
  double ratio_lo = 1.0;         // solved common ratio below the core
  double ratio_hi = 1.0;         // solved common ratio above the core
  int cells_lo = 0;              // stretched cells below the core
  int cells_hi = 0;              // stretched cells above the core

  int n() const { return static_cast<int>(spacings.size()); }
  double min() const { return edges.front(); }
  double max() const { return edges.back(); }
};

// Builds the axis: uniform cells at d_uniform, remaining cells split across
// the stretched sides, per-side common ratio solved so each side closes
// exactly on [min, max]. Throws InvalidSpec when no ratio in (1, 2] closes a
// side or the solved ratio leaves [1, nominal_ratio + 0.05].
Axis build_axis(const AxisSpec& spec);

// Cell index i with edges[i] <= q <= edges[i+1]; interior-edge ties resolve
// to the lower cell. Throws OutOfRange outside [min, max].
int locate(const Axis& axis, double q);

struct StretchedGrid {
  Axis x, y, z;
  const Axis& axis(int a) const { return a == 0 ? x : (a == 1 ? y : z); }
};

// The magnetosphere mesh: x in [-100, 30], y and z in [-100, 100] R_E,
// 156 x 150 x 150 cells, uniform 0.4 R_E core within 10 R_E of Earth,
// ratio-1.05 stretching outside.
StretchedGrid build_default_grid();

}  // namespace ppmlr
