#include "ppmlr/physics.hpp"

#include <cmath>
#include <string>

#include "ppmlr/errors.hpp"

namespace ppmlr {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec3 dipole_field(const Vec3& pos, const Constants& c) {
  const double r2 = norm2(pos);
  if (r2 == 0.0) throw UnphysicalState("dipole_field evaluated at the singularity");
  const double r = std::sqrt(r2);
  const Vec3 rhat = pos / r;
  const Vec3& m = c.dipole_moment;
  return (c.mu0 / (4.0 * kPi)) * (3.0 * dot(m, rhat) * rhat - m) / (r2 * r);
}

Vec3 mirror_dipole_field(const Vec3& pos, const Constants& c, const Vec3& image_center) {
  Constants image = c;
  image.dipole_moment.x = -c.dipole_moment.x;
  return dipole_field(pos - image_center, image);
}

ConservedState prim_to_cons(const PrimitiveState& s, const Constants& c) {
  ConservedState u;
  u.rho = s.rho;
  u.mom = s.rho * s.v;
  u.bprime = s.bprime;
  u.energy = s.p / (c.gamma - 1.0) + 0.5 * s.rho * norm2(s.v) +
             norm2(s.bprime) / (2.0 * c.mu0);
  return u;
}

PrimitiveState cons_to_prim(const ConservedState& s, const Constants& c) {
  if (!(s.rho > 0.0))
    throw UnphysicalState("non-positive density " + std::to_string(s.rho));
  PrimitiveState q;
  q.rho = s.rho;
  q.v = s.mom / s.rho;
  q.bprime = s.bprime;
  const double internal =
      s.energy - 0.5 * norm2(s.mom) / s.rho - norm2(s.bprime) / (2.0 * c.mu0);
  q.p = (c.gamma - 1.0) * internal;
  if (!(q.p > 0.0)) {
    if (c.pressure_floor > 0.0)
      q.p = c.pressure_floor;
    else
      throw UnphysicalState("non-positive pressure " + std::to_string(q.p) +
                            " recovered from conserved state");
  }
  return q;
}

DerivedQuantities derived(const PrimitiveState& s, const Constants& c, const Vec3& bd) {
  return {s.p + norm2(s.bprime) / (2.0 * c.mu0), s.bprime + bd};
}

double fast_speed(const PrimitiveState& s, int direction, const Constants& c,
                  const Vec3& bd) {
  const Vec3 b = s.bprime + bd;
  const double a2 = c.gamma * s.p / s.rho;
  const double ca2 = norm2(b) / (c.mu0 * s.rho);
  const double can2 = b[direction] * b[direction] / (c.mu0 * s.rho);
  const double sum = a2 + ca2;
  const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * a2 * can2));
  return std::sqrt(0.5 * (sum + disc));
}

}  // namespace ppmlr
