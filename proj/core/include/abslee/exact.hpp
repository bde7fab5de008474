#pragma once

#include "abslee/types.hpp"

#include <vector>

namespace abslee {

/// Gaussian pressure pulse eps1 * exp(-alpha1 (x^2 + y^2)) convected by a
/// mean flow of Mach `mach` along x.
struct PulseParams {
  double alpha1 = 1.0;
  double eps1 = 1e-5;
  double mach = 0.5;

  void validate() const;
};

/// Exact acoustic pressure of the pulse:
///   p = eps1 / (2 alpha1) int_0^inf exp(-xi^2 / (4 alpha1)) cos(xi t) J0(xi eta) xi dxi,
/// eta = |(x - M t, y)|. Throws Error for non-finite input or t < 0.
double exact_pressure(double x, double y, double t, const PulseParams& params);

/// Same integral as a function of eta alone (M = 0 frame).
double exact_pressure_radial(double eta, double t, const PulseParams& params);

/// The initial pulse state at a point: p' = eps1 exp(-alpha1 r^2), rho' = p'
/// when `isentropic` (otherwise zero), u' = v' = 0.
State4 gaussian_pulse_state(const Vec2& x, const PulseParams& params, bool isentropic = true);

/// Tabulated exact_pressure_radial on [0, eta_max] for one t, interpolated
/// with local degree-7 Lagrange polynomials on a uniform grid. Points beyond
/// eta_max are evaluated directly.
class PressureProfile {
 public:
  PressureProfile(const PulseParams& params, double t, double eta_max, double spacing = 0.01);

  double operator()(double x, double y) const;
  double radial(double eta) const;
  double t() const { return t_; }

 private:
  PulseParams params_;
  double t_;
  double spacing_;
  std::vector<double> table_;
};

}  // namespace abslee
