#include "abslee/stability.hpp"

#include "abslee/types.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace abslee {

double amplification_factor(const StabilityQuery& q) {
  const double s = std::sin(0.5 * q.theta);
  const double c = std::cos(0.5 * q.theta);
  return 2.0 * std::abs(s) / (q.n + 1) * std::sqrt(q.r * q.r * c * c + 0.25 * s * s);
}

double stability_envelope(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return std::abs(s) * std::sqrt(0.5 * c * c + 0.25 * s * s);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return g;
}

StabilityScan empirical_stability_scan(int n_max, std::span<const double> r_grid,
                                       std::span<const double> theta_grid) {
  if (n_max < 0 || r_grid.empty() || theta_grid.empty())
    throw Error("empirical_stability_scan: empty grid");
  StabilityScan scan;
  scan.threshold.assign(static_cast<std::size_t>(n_max) + 1, -1.0);
  for (int n = 0; n <= n_max; ++n) {
    for (double r : r_grid) {
      double sup = 0.0;
      for (double th : theta_grid) sup = std::max(sup, amplification_factor({n, r, th}));
      scan.rows.push_back({n, r, sup});
      if (sup <= 1.0 + 1e-12) scan.threshold[n] = std::max(scan.threshold[n], r);
    }
  }
  scan.theta.assign(theta_grid.begin(), theta_grid.end());
  for (double th : theta_grid) scan.envelope.push_back(stability_envelope(th));
  return scan;
}

void StabilityScan::write_csv(std::ostream& out) const {
  out.precision(17);
  out << "n,r,sup_G\n";
  for (const auto& row : rows) out << row.n << ',' << row.r << ',' << row.sup_g << '\n';
}

void StabilityScan::write_envelope_csv(std::ostream& out) const {
  out.precision(17);
  out << "theta,H\n";
  for (std::size_t i = 0; i < theta.size(); ++i) out << theta[i] << ',' << envelope[i] << '\n';
}

Abs1dResult simulate_1d_abs(std::span<const double> u0, double a, double h, double t, int n_terms) {
  if (u0.size() < 3) throw Error("simulate_1d_abs: need at least 3 grid points");
  if (!(h > 0.0) || !(t > 0.0) || n_terms < 0) throw Error("simulate_1d_abs: bad parameters");
  const std::size_t m = u0.size();
  const double alpha = h / (2.0 * t);
  Abs1dResult res;
  res.terms.emplace_back(u0.begin(), u0.end());
  res.sum = res.terms.front();
  for (int n = 0; n < n_terms; ++n) {
    const auto& u = res.terms.back();
    std::vector<double> next(m);
    const double f = -t / (n + 1) / (2.0 * h);
    for (std::size_t i = 0; i < m; ++i) {
      const double up = u[(i + 1) % m];
      const double um = u[(i + m - 1) % m];
      next[i] = f * (a * (up - um) - alpha * (up - 2.0 * u[i] + um));
    }
    for (std::size_t i = 0; i < m; ++i) res.sum[i] += next[i];
    res.terms.push_back(std::move(next));
  }
  return res;
}

}  // namespace abslee
