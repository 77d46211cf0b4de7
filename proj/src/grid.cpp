#include "ppmlr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppmlr/errors.hpp"

namespace ppmlr {
namespace {

// Sum of d*r^1 + ... + d*r^n, summed term by term for stability near r = 1.
double geometric_extent(double d, double r, int n) {
  double term = d;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    term *= r;
    sum += term;
  }
  return sum;
}

// Solves geometric_extent(d, r, n) = extent for r on [1, 2] by bisection.
double solve_ratio(double d, double extent, int n, const char* side) {
  const double at_one = d * n;
  const double tol = 1e-12 * std::max(1.0, extent);
  if (std::abs(at_one - extent) <= tol) return 1.0;
  if (at_one > extent)
    throw InvalidSpec(std::string("axis ") + side +
                      " side: allocated cells overfill the side at ratio 1 "
                      "(no closing ratio >= 1 exists)");
  if (geometric_extent(d, 2.0, n) < extent)
    throw InvalidSpec(std::string("axis ") + side +
                      " side: no ratio in (1, 2] closes the side for the "
                      "allocated cell count");
  double lo = 1.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (geometric_extent(d, mid, n) < extent ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int uniform_cell_count(const AxisSpec& s) {
  const double m = (s.uniform_hi - s.uniform_lo) / s.d_uniform;
  const double rounded = std::round(m);
  if (std::abs(m - rounded) > 1e-9 * std::max(1.0, m))
    throw InvalidSpec("uniform region extent is not an integer multiple of d_uniform");
  return static_cast<int>(rounded);
}

// Continuous cell-count estimate for a geometric side of length L at ratio r.
double side_weight(double len, double d, double r) {
  if (len <= 0.0) return 0.0;
  return std::log(1.0 + len * (r - 1.0) / d) / std::log(r);
}

}  // namespace

Axis build_axis(const AxisSpec& spec) {
  if (!(spec.d_uniform > 0.0)) throw InvalidSpec("d_uniform must be positive");
  if (!(spec.nominal_ratio > 1.0)) throw InvalidSpec("nominal_ratio must exceed 1");
  if (!(spec.min <= spec.uniform_lo && spec.uniform_lo < spec.uniform_hi &&
        spec.uniform_hi <= spec.max))
    throw InvalidSpec("axis spec requires min <= uniform_lo < uniform_hi <= max");

  const int n_uniform = uniform_cell_count(spec);
  const int n_stretch = spec.target_cells - n_uniform;
  if (n_stretch < 0)
    throw InvalidSpec("target_cells smaller than the uniform cell count");

  const double len_lo = spec.uniform_lo - spec.min;
  const double len_hi = spec.max - spec.uniform_hi;
  if (len_lo == 0.0 && len_hi == 0.0 && n_stretch != 0)
    throw InvalidSpec("all-uniform axis but target_cells exceeds the uniform count");

  int n_lo = 0, n_hi = 0;
  if (len_lo > 0.0 && len_hi > 0.0) {
    const double w_lo = side_weight(len_lo, spec.d_uniform, spec.nominal_ratio);
    const double w_hi = side_weight(len_hi, spec.d_uniform, spec.nominal_ratio);
    n_lo = static_cast<int>(std::round(n_stretch * w_lo / (w_lo + w_hi)));
    n_hi = n_stretch - n_lo;
  } else if (len_lo > 0.0) {
    n_lo = n_stretch;
  } else if (len_hi > 0.0) {
    n_hi = n_stretch;
  }
  if ((len_lo > 0.0 && n_lo <= 0) || (len_hi > 0.0 && n_hi <= 0))
    throw InvalidSpec("a stretched side received no cells; increase target_cells");

  Axis axis;
  axis.cells_lo = n_lo;
  axis.cells_hi = n_hi;
  axis.ratio_lo = n_lo > 0 ? solve_ratio(spec.d_uniform, len_lo, n_lo, "lower") : 1.0;
  axis.ratio_hi = n_hi > 0 ? solve_ratio(spec.d_uniform, len_hi, n_hi, "upper") : 1.0;

  const double ratio_cap = spec.nominal_ratio + 0.05;
  if (axis.ratio_lo > ratio_cap)
    throw InvalidSpec("lower side ratio " + std::to_string(axis.ratio_lo) +
                      " exceeds nominal_ratio + 0.05");
  if (axis.ratio_hi > ratio_cap)
    throw InvalidSpec("upper side ratio " + std::to_string(axis.ratio_hi) +
                      " exceeds nominal_ratio + 0.05");

  const int n = n_lo + n_uniform + n_hi;
  axis.edges.resize(n + 1);

  // Uniform core laid out exactly, stretched edges accumulated outward.
  for (int k = 0; k <= n_uniform; ++k)
    axis.edges[n_lo + k] = spec.uniform_lo + k * spec.d_uniform;
  double w = spec.d_uniform;
  for (int k = 1; k <= n_lo; ++k) {
    w *= axis.ratio_lo;
    axis.edges[n_lo - k] = axis.edges[n_lo - k + 1] - w;
  }
  w = spec.d_uniform;
  for (int k = 1; k <= n_hi; ++k) {
    w *= axis.ratio_hi;
    axis.edges[n_lo + n_uniform + k] = axis.edges[n_lo + n_uniform + k - 1] + w;
  }
  // Snap the outermost edges; the bisection residual lands in the last cell.
  axis.edges.front() = spec.min;
  axis.edges.back() = spec.max;

  axis.centers.resize(n);
  axis.spacings.resize(n);
  for (int i = 0; i < n; ++i) {
    axis.spacings[i] = axis.edges[i + 1] - axis.edges[i];
    axis.centers[i] = 0.5 * (axis.edges[i] + axis.edges[i + 1]);
    if (!(axis.spacings[i] > 0.0))
      throw InvalidSpec("non-positive spacing at cell " + std::to_string(i));
  }
  return axis;
}

int locate(const Axis& axis, double q) {
  if (q < axis.min() || q > axis.max())
    throw OutOfRange("coordinate " + std::to_string(q) + " outside [" +
                     std::to_string(axis.min()) + ", " + std::to_string(axis.max()) + "]");
  // First edge >= q; ties at an interior edge resolve to the lower cell.
  const auto it = std::lower_bound(axis.edges.begin(), axis.edges.end(), q);
  const int i = static_cast<int>(it - axis.edges.begin());
  return std::clamp(i - 1, 0, axis.n() - 1);
}

StretchedGrid build_default_grid() {
  AxisSpec sun_earth{-100.0, 30.0, -10.0, 10.0, 0.4, 156, 1.05};
  AxisSpec lateral{-100.0, 100.0, -10.0, 10.0, 0.4, 150, 1.05};
  return {build_axis(sun_earth), build_axis(lateral), build_axis(lateral)};
}

}  // namespace ppmlr
