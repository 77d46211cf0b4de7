#include <cmath>

#include "doctest.h"
#include "ppmlr/errors.hpp"
#include "ppmlr/grid.hpp"

using namespace ppmlr;

namespace {

// Independent closure oracle: solve d*r*(r^m - 1)/(r - 1) = extent for r by
// bisection on [1+eps, 2].
double closure_ratio(double d, int m, double extent) {
  auto len = [&](double r) {
    double sum = 0.0, w = d;
    for (int i = 0; i < m; ++i) {
      w *= r;
      sum += w;
    }
    return sum;
  };
  double lo = 1.0 + 1e-12, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (len(mid) < extent ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

const AxisSpec kYSpec{-100.0, 100.0, -10.0, 10.0, 0.4, 150, 1.05};
const AxisSpec kXSpec{-100.0, 30.0, -10.0, 10.0, 0.4, 156, 1.05};

}  // namespace

TEST_CASE("all-uniform axis: 10 equal unit cells") {
  const Axis a = build_axis({0.0, 10.0, 0.0, 10.0, 1.0, 10, 1.05});
  REQUIRE(a.n() == 10);
  CHECK(a.cells_lo == 0);
  CHECK(a.cells_hi == 0);
  for (int i = 0; i < 10; ++i) {
    CHECK(a.spacings[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.edges[i] == doctest::Approx(double(i)).epsilon(1e-14));
  }
}

TEST_CASE("y axis: 50 uniform cells plus 50 stretched per side, ratio near 1.05") {
  const Axis a = build_axis(kYSpec);
  REQUIRE(a.n() == 150);
  CHECK(a.cells_lo == 50);
  CHECK(a.cells_hi == 50);
  const double r_ref = closure_ratio(0.4, 50, 90.0);
  CHECK(std::abs(a.ratio_lo - r_ref) < 1e-9);
  CHECK(std::abs(a.ratio_hi - r_ref) < 1e-9);
  CHECK(std::abs(a.ratio_lo - 1.05) < 0.005);
}

TEST_CASE("x axis: both stretched sides close exactly") {
  const Axis a = build_axis(kXSpec);
  REQUIRE(a.n() == 156);
  double lo_sum = 0.0, hi_sum = 0.0;
  for (int i = 0; i < a.cells_lo; ++i) lo_sum += a.spacings[i];
  for (int i = a.n() - a.cells_hi; i < a.n(); ++i) hi_sum += a.spacings[i];
  CHECK(lo_sum == doctest::Approx(90.0).epsilon(1e-10));
  CHECK(hi_sum == doctest::Approx(20.0).epsilon(1e-10));
  CHECK(a.min() == -100.0);
  CHECK(a.max() == 30.0);
}

TEST_CASE("default grid shape and resolution") {
  const StretchedGrid g = build_default_grid();
  CHECK(g.x.n() == 156);
  CHECK(g.y.n() == 150);
  CHECK(g.z.n() == 150);
  double min_dx = 1e300, x_sum = 0.0;
  for (int a = 0; a < 3; ++a)
    for (double dx : g.axis(a).spacings) min_dx = std::min(min_dx, dx);
  for (double dx : g.x.spacings) x_sum += dx;
  CHECK(min_dx == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(x_sum == doctest::Approx(130.0).epsilon(1e-10));
}

TEST_CASE("axis geometric invariants") {
  for (const AxisSpec& spec : {kXSpec, kYSpec}) {
    const Axis a = build_axis(spec);
    double sum = 0.0;
    for (int i = 0; i < a.n(); ++i) {
      CHECK(a.edges[i + 1] > a.edges[i]);
      CHECK(a.spacings[i] == a.edges[i + 1] - a.edges[i]);
      CHECK(a.centers[i] == doctest::Approx(0.5 * (a.edges[i] + a.edges[i + 1]))
                                .epsilon(1e-14));
      sum += a.spacings[i];
    }
    CHECK(sum == doctest::Approx(spec.max - spec.min).epsilon(1e-10));
    // Uniform core spacing ratio 1 within 1e-12.
    double umin = 1e300, umax = 0.0;
    for (int i = a.cells_lo; i < a.n() - a.cells_hi; ++i) {
      umin = std::min(umin, a.spacings[i]);
      umax = std::max(umax, a.spacings[i]);
    }
    CHECK(umax / umin - 1.0 < 1e-12);
    // Constant per-side consecutive ratios within 1e-10.
    for (int i = 1; i < a.cells_lo; ++i) {
      const double r = a.spacings[i - 1] / a.spacings[i];
      CHECK(std::abs(r - a.ratio_lo) < 1e-10 * a.ratio_lo);
    }
    for (int i = a.n() - a.cells_hi + 1; i < a.n(); ++i) {
      const double r = a.spacings[i] / a.spacings[i - 1];
      CHECK(std::abs(r - a.ratio_hi) < 1e-10 * a.ratio_hi);
    }
  }
}

TEST_CASE("build_axis is deterministic bitwise") {
  const Axis a = build_axis(kXSpec);
  const Axis b = build_axis(kXSpec);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) CHECK(a.edges[i] == b.edges[i]);
  CHECK(a.ratio_lo == b.ratio_lo);
  CHECK(a.ratio_hi == b.ratio_hi);
}

TEST_CASE("unsatisfiable closure is an error") {
  // 2 stretched cells cannot span 90 R_E starting from 0.4 with r <= 2.
  CHECK_THROWS_AS(build_axis({-100.0, 100.0, -10.0, 10.0, 0.4, 52, 1.05}), InvalidSpec);
}

TEST_CASE("locate") {
  const Axis unit = build_axis({0.0, 10.0, 0.0, 10.0, 1.0, 10, 1.05});
  CHECK(locate(unit, 3.5) == 3);
  CHECK(locate(unit, unit.min()) == 0);
  CHECK(locate(unit, unit.max()) == 9);
  CHECK(locate(unit, 3.0) == 2);  // interior-edge tie goes to the lower cell
  CHECK_THROWS_AS(locate(unit, -0.1), OutOfRange);
  CHECK_THROWS_AS(locate(unit, 10.1), OutOfRange);

  const StretchedGrid g = build_default_grid();
  const int earth = locate(g.x, 0.0);
  CHECK(g.x.spacings[earth] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(g.x.edges[earth] <= 0.0);
  CHECK(g.x.edges[earth + 1] >= 0.0);
}
