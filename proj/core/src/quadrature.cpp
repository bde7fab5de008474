#include "abslee/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace abslee {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw Error("Gauss-Legendre rule needs at least one point");
  Rule1D rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1], ascending order.
    rule.points[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (x + 1.0);
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
  return rule;
}

Rule1D line_rule(int degree) { return gauss_legendre(std::max(1, (degree + 2) / 2)); }

TriangleRule triangle_rule(int degree) {
  // The collapse factor (1 - u) adds one degree in u.
  const Rule1D gu = line_rule(degree + 1);
  const Rule1D gv = line_rule(degree);
  TriangleRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < gu.points.size(); ++i) {
    const double u = gu.points[i];
    for (std::size_t j = 0; j < gv.points.size(); ++j) {
      const double v = gv.points[j];
      rule.points.emplace_back(u, v * (1.0 - u));
      rule.weights.push_back(gu.weights[i] * gv.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace abslee
