#include "ppmlr/oracles/exact_riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace ppmlr::oracle {

namespace {

// Toro's f_K(p): velocity change across the wave on one side.
double wave_fn(double p, const GasState& s, double a, double gamma, double* deriv) {
  if (p > s.p) {  // shock
    const double A = 2.0 / ((gamma + 1.0) * s.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
    const double root = std::sqrt(A / (p + B));
    if (deriv) *deriv = root * (1.0 - 0.5 * (p - s.p) / (B + p));
    return (p - s.p) * root;
  }
  const double pr = p / s.p;  // rarefaction
  const double ex = (gamma - 1.0) / (2.0 * gamma);
  if (deriv) *deriv = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * a);
  return 2.0 * a / (gamma - 1.0) * (std::pow(pr, ex) - 1.0);
}

}  // namespace

ExactRiemann::ExactRiemann(const GasState& left, const GasState& right, double gamma)
    : l_(left), r_(right), gamma_(gamma) {
  al_ = std::sqrt(gamma * l_.p / l_.rho);
  ar_ = std::sqrt(gamma * r_.p / r_.rho);
  if (2.0 * (al_ + ar_) / (gamma - 1.0) <= r_.u - l_.u)
    throw std::runtime_error("exact Riemann: vacuum is generated");

  // Two-rarefaction guess, then Newton on f_L + f_R + du = 0.
  const double ex = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((al_ + ar_ - 0.5 * (gamma - 1.0) * (r_.u - l_.u)) /
                          (al_ / std::pow(l_.p, ex) + ar_ / std::pow(r_.p, ex)),
                      1.0 / ex);
  p = std::max(p, 1e-14);
  for (int it = 0; it < 200; ++it) {
    double dl, dr;
    const double f =
        wave_fn(p, l_, al_, gamma_, &dl) + wave_fn(p, r_, ar_, gamma_, &dr) + (r_.u - l_.u);
    const double step = f / (dl + dr);
    double next = p - step;
    if (next <= 0.0) next = 0.5 * p;
    if (std::abs(next - p) <= 1e-14 * p) {
      p = next;
      break;
    }
    p = next;
  }
  pstar_ = p;
  ustar_ = 0.5 * (l_.u + r_.u) +
           0.5 * (wave_fn(p, r_, ar_, gamma_, nullptr) - wave_fn(p, l_, al_, gamma_, nullptr));
}

GasState ExactRiemann::sample(double xi) const {
  const double g = gamma_;
  const double gm = g - 1.0, gp = g + 1.0;
  if (xi <= ustar_) {  // left of the contact
    if (pstar_ > l_.p) {
      const double sl =
          l_.u - al_ * std::sqrt(gp / (2.0 * g) * pstar_ / l_.p + gm / (2.0 * g));
      if (xi <= sl) return l_;
      const double rho = l_.rho * (pstar_ / l_.p + gm / gp) /
                         (gm / gp * pstar_ / l_.p + 1.0);
      return {rho, ustar_, pstar_};
    }
    const double astar = al_ * std::pow(pstar_ / l_.p, gm / (2.0 * g));
    if (xi <= l_.u - al_) return l_;
    if (xi >= ustar_ - astar)
      return {l_.rho * std::pow(pstar_ / l_.p, 1.0 / g), ustar_, pstar_};
    const double u = 2.0 / gp * (al_ + gm / 2.0 * l_.u + xi);
    const double a = 2.0 / gp * (al_ + gm / 2.0 * (l_.u - xi));
    return {l_.rho * std::pow(a / al_, 2.0 / gm), u,
            l_.p * std::pow(a / al_, 2.0 * g / gm)};
  }
  if (pstar_ > r_.p) {
    const double sr =
        r_.u + ar_ * std::sqrt(gp / (2.0 * g) * pstar_ / r_.p + gm / (2.0 * g));
    if (xi >= sr) return r_;
    const double rho = r_.rho * (pstar_ / r_.p + gm / gp) /
                       (gm / gp * pstar_ / r_.p + 1.0);
    return {rho, ustar_, pstar_};
  }
  const double astar = ar_ * std::pow(pstar_ / r_.p, gm / (2.0 * g));
  if (xi >= r_.u + ar_) return r_;
  if (xi <= ustar_ + astar)
    return {r_.rho * std::pow(pstar_ / r_.p, 1.0 / g), ustar_, pstar_};
  const double u = 2.0 / gp * (-ar_ + gm / 2.0 * r_.u + xi);
  const double a = 2.0 / gp * (ar_ - gm / 2.0 * (r_.u - xi));
  return {r_.rho * std::pow(a / ar_, 2.0 / gm), u,
          r_.p * std::pow(a / ar_, 2.0 * g / gm)};
}

}  // namespace ppmlr::oracle
