#pragma once

#include "ppmlr/types.hpp"

namespace ppmlr {

// Unit system and fixed physical parameters. The default is nondimensional
// (mu0 = 1, lengths in R_E); si() gives SI constants for reporting.
struct Constants {
  double mu0 = 1.0;
  double gamma = 5.0 / 3.0;
  Vec3 dipole_moment{0.0, 0.0, -4.0 * 3.14159265358979323846};  // |B_d| = 1 at the equator, r = 1
  double pressure_floor = 0.0;  // 0 disables the floor

  static Constants si() {
    Constants c;
    c.mu0 = 4.0e-7 * 3.14159265358979323846;
    c.dipole_moment = {0.0, 0.0, -8.0e22};  // A m^2
    return c;
  }
};

struct PrimitiveState {
  double rho = 0.0;
  Vec3 v;
  Vec3 bprime;  // B' = B - B_d
  double p = 0.0;
};

struct ConservedState {
  double rho = 0.0;
  Vec3 mom;     // rho v
  Vec3 bprime;
  double energy = 0.0;  // p/(gamma-1) + rho v^2/2 + B'^2/(2 mu0)
};

// Total pressure p + B'^2/(2 mu0) and total field B' + B_d.
struct DerivedQuantities {
  double pstar = 0.0;
  Vec3 btotal;
};

// Point dipole at the origin. Throws UnphysicalState at |pos| = 0.
Vec3 dipole_field(const Vec3& pos, const Constants& c);

// Field of the image dipole placed at image_center (default (30,0,0) R_E),
// with the moment's component along x negated so the combined normal field
// vanishes on the plane midway between the dipoles.
Vec3 mirror_dipole_field(const Vec3& pos, const Constants& c,
                         const Vec3& image_center = {30.0, 0.0, 0.0});

ConservedState prim_to_cons(const PrimitiveState& s, const Constants& c);

// Exact inverse of prim_to_cons. Throws UnphysicalState on non-positive
// density or recovered pressure (unless a pressure floor is configured).
PrimitiveState cons_to_prim(const ConservedState& s, const Constants& c);

DerivedQuantities derived(const PrimitiveState& s, const Constants& c, const Vec3& bd);

// Fast magnetosonic speed along the given axis (0..2), using the total
// field B' + bd.
double fast_speed(const PrimitiveState& s, int direction, const Constants& c,
                  const Vec3& bd = {});

}  // namespace ppmlr
