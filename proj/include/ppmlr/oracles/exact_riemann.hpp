#pragma once

namespace ppmlr::oracle {

// Exact solution of the gamma-law Euler Riemann problem (Toro's pressure
// iteration). Used only as a reference for the shock-tube suites.
struct GasState {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

class ExactRiemann {
 public:
  ExactRiemann(const GasState& left, const GasState& right, double gamma);

  double pstar() const { return pstar_; }
  double ustar() const { return ustar_; }

  // Self-similar solution at xi = x/t.
  GasState sample(double xi) const;

 private:
  GasState l_, r_;
  double gamma_;
  double al_, ar_;  // sound speeds
  double pstar_ = 0.0, ustar_ = 0.0;
};

}  // namespace ppmlr::oracle
