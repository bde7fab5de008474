#include "abslee/exact.hpp"

#include "abslee/bessel.hpp"
#include "abslee/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace abslee {

void PulseParams::validate() const {
  if (!(alpha1 > 0.0) || !std::isfinite(alpha1)) throw ValidationError("pulse: alpha1 must be positive");
  if (eps1 == 0.0 || !std::isfinite(eps1)) throw ValidationError("pulse: eps1 must be finite and non-zero");
  if (!std::isfinite(mach)) throw ValidationError("pulse: mach must be finite");
}

double exact_pressure_radial(double eta, double t, const PulseParams& params) {
  if (!std::isfinite(eta) || !std::isfinite(t)) throw Error("exact_pressure: non-finite input");
  if (t < 0.0) throw Error("exact_pressure: t must be >= 0");
  eta = std::abs(eta);
  static const Rule1D gl = gauss_legendre(16);
  // Envelope exp(-xi^2 / (4 alpha1)) < 1e-16 beyond xi_max.
  const double xi_max = std::sqrt(4.0 * params.alpha1 * 37.0);
  const double width = std::numbers::pi / std::max({t, eta, 1.0});
  const int panels = static_cast<int>(std::ceil(xi_max / width));
  const double w = xi_max / panels;
  const double inv4a = 0.25 / params.alpha1;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = k * w;
    double s = 0.0;
    for (std::size_t q = 0; q < gl.points.size(); ++q) {
      const double xi = a + w * gl.points[q];
      s += gl.weights[q] * std::exp(-xi * xi * inv4a) * std::cos(xi * t) * bessel_j0(xi * eta) * xi;
    }
    sum += s * w;
  }
  return params.eps1 / (2.0 * params.alpha1) * sum;
}

double exact_pressure(double x, double y, double t, const PulseParams& params) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw Error("exact_pressure: non-finite input");
  return exact_pressure_radial(std::hypot(x - params.mach * t, y), t, params);
}

State4 gaussian_pulse_state(const Vec2& x, const PulseParams& params, bool isentropic) {
  const double p = params.eps1 * std::exp(-params.alpha1 * x.squaredNorm());
  return {isentropic ? p : 0.0, 0.0, 0.0, p};
}

namespace {
constexpr int kStencil = 8;
}

PressureProfile::PressureProfile(const PulseParams& params, double t, double eta_max, double spacing)
    : params_(params), t_(t), spacing_(spacing) {
  params_.validate();
  if (!(spacing > 0.0) || !(eta_max > 0.0)) throw Error("PressureProfile: bad grid");
  const auto n = static_cast<std::size_t>(std::ceil(eta_max / spacing)) + kStencil;
  table_.resize(n);
  for (std::size_t i = 0; i < n; ++i) table_[i] = exact_pressure_radial(i * spacing, t, params_);
}

double PressureProfile::radial(double eta) const {
  eta = std::abs(eta);
  const double s = eta / spacing_;
  const auto n = static_cast<long>(table_.size());
  // Even in eta: mirror the stencil through 0 near the origin.
  long start = static_cast<long>(std::floor(s)) - kStencil / 2 + 1;
  if (start + kStencil > n) return exact_pressure_radial(eta, t_, params_);
  double out = 0.0;
  for (int i = 0; i < kStencil; ++i) {
    const long node = start + i;
    double l = 1.0;
    for (int j = 0; j < kStencil; ++j)
      if (j != i) l *= (s - static_cast<double>(start + j)) / static_cast<double>(i - j);
    out += l * table_[static_cast<std::size_t>(std::abs(node))];
  }
  return out;
}

double PressureProfile::operator()(double x, double y) const {
  return radial(std::hypot(x - params_.mach * t_, y));
}

}  // namespace abslee
