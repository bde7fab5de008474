#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace abslee {

/// Von Neumann analysis of the 1D first-order ABS scheme for u_t + a u_x = 0
/// with dissipation alpha = h / (2 t).
struct StabilityQuery {
  int n = 0;           // Adomian term index
  double r = 0.0;      // |a t / h|
  double theta = 0.0;  // K h in [0, 2 pi]
};

/// |G_n| = 2 |sin(theta/2)| / (n+1) * sqrt(r^2 cos^2(theta/2) + 0.25 sin^2(theta/2)).
double amplification_factor(const StabilityQuery& q);

/// H(theta) = |sin theta| sqrt(0.5 cos^2 theta + 0.25 sin^2 theta), the
/// n-independent bound on |G_n| at r = (n+1)/sqrt(2) (with theta -> theta/2).
double stability_envelope(double theta);

struct StabilityRow {
  int n = 0;
  double r = 0.0;
  double sup_g = 0.0;
};

struct StabilityScan {
  std::vector<StabilityRow> rows;
  /// Per n: largest r on the grid whose sup_theta |G_n| <= 1 + 1e-12, or -1
  /// when none qualifies.
  std::vector<double> threshold;
  std::vector<double> theta;
  std::vector<double> envelope;  // H(theta) on the same grid

  void write_csv(std::ostream& out) const;
  void write_envelope_csv(std::ostream& out) const;
};

/// Evaluates sup over theta_grid of |G_n| for n = 0..n_max and every r.
StabilityScan empirical_stability_scan(int n_max, std::span<const double> r_grid,
                                       std::span<const double> theta_grid);

/// Uniform grid of `count` points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

struct Abs1dResult {
  std::vector<std::vector<double>> terms;  // u_0 ... u_{n_terms}
  std::vector<double> sum;
};

/// One restart of the 1D ABS recursion on a periodic grid:
///   u_{n+1}^i = -t/(n+1) / (2h) * (a (u^{i+1} - u^{i-1}) - alpha (u^{i+1} - 2u^i + u^{i-1})),
/// alpha = h / (2t). Computes u_1 ... u_{n_terms}.
Abs1dResult simulate_1d_abs(std::span<const double> u0, double a, double h, double t, int n_terms);

}  // namespace abslee
