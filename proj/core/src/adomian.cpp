#include "abslee/adomian.hpp"

#include <string>

namespace abslee {

std::vector<double> rho_hat_coeffs(std::span<const double> rho) {
  if (rho.empty()) return {};
  if (rho[0] == 0.0) throw SolverError("rho_hat_coeffs: singular density (rho_0 == 0)");
  std::vector<double> out(rho.size());
  const double inv = 1.0 / rho[0];
  out[0] = inv;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += rho[j] * out[k - j];
    out[k] = -inv * s;
  }
  return out;
}

State4 adomian_euler_terms(const AdomianHistory& h, int n, double gamma) {
  if (n < 0) throw Error("adomian_euler_terms: negative order");
  const auto len = static_cast<std::size_t>(n) + 1;
  if (h.value.size() < len || h.dx.size() < len || h.dy.size() < len)
    throw Error("adomian_euler_terms: history shorter than n + 1 (" + std::to_string(len) + ")");

  std::vector<double> rho(len);
  for (std::size_t k = 0; k < len; ++k) rho[k] = h.value[k][kRho];
  const std::vector<double> rhat = rho_hat_coeffs(rho);

  State4 out = State4::Zero();
  for (std::size_t j = 0; j < len; ++j) {
    const std::size_t m = len - 1 - j;  // n - j
    const State4& qm = h.value[m];
    const State4& qj = h.value[j];
    const State4& xm = h.dx[m];
    const State4& xj = h.dx[j];
    const State4& ym = h.dy[m];
    const State4& yj = h.dy[j];
    // d/dx (rho_m u_j) + d/dy (rho_m v_j), by the product rule
    out[kRho] -= xm[kRho] * qj[kU] + qm[kRho] * xj[kU] + ym[kRho] * qj[kV] + qm[kRho] * yj[kV];
    out[kU] -= qm[kU] * xj[kU] + qm[kV] * yj[kU] + rhat[m] * xj[kP];
    out[kV] -= qm[kU] * xj[kV] + qm[kV] * yj[kV] + rhat[m] * yj[kP];
    out[kP] -= qm[kU] * xj[kP] + qm[kV] * yj[kP] + gamma * qj[kP] * (xm[kU] + ym[kV]);
  }
  return out;
}

State4 euler_rhs(const State4& q, const State4& dx, const State4& dy, double gamma) {
  if (q[kRho] == 0.0) throw SolverError("euler_rhs: singular density");
  const double inv = 1.0 / q[kRho];
  State4 r;
  r[kRho] = -(dx[kRho] * q[kU] + q[kRho] * dx[kU] + dy[kRho] * q[kV] + q[kRho] * dy[kV]);
  r[kU] = -(q[kU] * dx[kU] + q[kV] * dy[kU] + inv * dx[kP]);
  r[kV] = -(q[kU] * dx[kV] + q[kV] * dy[kV] + inv * dy[kP]);
  r[kP] = -(q[kU] * dx[kP] + q[kV] * dy[kP] + gamma * q[kP] * (dx[kU] + dy[kV]));
  return r;
}

}  // namespace abslee
