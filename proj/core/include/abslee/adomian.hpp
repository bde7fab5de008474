#pragma once

#include "abslee/types.hpp"

#include <span>
#include <vector>

namespace abslee {

/// Power-series coefficients of 1 / (sum_k lambda^k rho_k):
///   rhat_0 = 1 / rho_0,  rhat_k = -(1 / rho_0) sum_{j=1..k} rho_j rhat_{k-j}.
/// Throws SolverError when rho_0 == 0.
std::vector<double> rho_hat_coeffs(std::span<const double> rho);

/// Pointwise history of the series terms Q_0 ... Q_n of the nonlinear
/// (primitive-variable) Euler system, with their x and y derivatives.
/// Each State4 holds (rho, u, v, p).
struct AdomianHistory {
  std::vector<State4> value;
  std::vector<State4> dx;
  std::vector<State4> dy;

  std::size_t size() const { return value.size(); }
};

/// Adomian polynomial N_n = (A_n, B_n, C_n, D_n) of the Euler right-hand side
/// at one point, from the first n + 1 entries of the history.
State4 adomian_euler_terms(const AdomianHistory& history, int n, double gamma = 1.4);

/// The Euler right-hand side -(flux divergence) at one point; equals
/// adomian_euler_terms with a single-term history.
State4 euler_rhs(const State4& q, const State4& dx, const State4& dy, double gamma = 1.4);

}  // namespace abslee
