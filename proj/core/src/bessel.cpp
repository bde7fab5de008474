#include "abslee/bessel.hpp"

#include <cmath>
#include <numbers>

namespace abslee {
namespace {

// sum_k (-x^2/4)^k / (k!)^2; the largest term at |x| = 8 is ~1e2, so the
// cancellation costs about two digits.
double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// J0(x) = (1/pi) int_0^pi cos(x cos t) dt. The integrand is smooth and
// periodic, so the midpoint rule converges geometrically once the number of
// nodes exceeds ~|x|.
double j0_integral(double x) {
  const int n = 2 * static_cast<int>(std::ceil(std::abs(x))) + 48;
  const double h = std::numbers::pi / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::cos(x * std::cos((i + 0.5) * h));
  return sum / n;
}

// Hankel asymptotic expansion (nu = 0), summed until the terms stop
// decreasing.
double j0_asymptotic(double x) {
  double p = 0.0;
  double q = 0.0;
  double a = 1.0;  // a_k = prod_{i<=k} (2i-1)^2 / (8 i) / x^k
  double prev = 2.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) a *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (std::abs(a) > prev) break;
    prev = std::abs(a);
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * a;
    } else {
      q -= sign * a;
    }
    if (std::abs(a) < 1e-17) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x < 8.0) return j0_series(x);
  if (x < 25.0) return j0_integral(x);
  return j0_asymptotic(x);
}

}  // namespace abslee
