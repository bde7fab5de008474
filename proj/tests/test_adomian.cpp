#include "abslee/adomian.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace abslee;

using abslee::oracle::SmoothTerms;
using abslee::oracle::lambda_oracle;

TEST(RhoHat, Examples) {
  const std::vector<double> one{2.0};
  EXPECT_DOUBLE_EQ(rho_hat_coeffs(one)[0], 0.5);
  const std::vector<double> two{1.0, 1e-3};
  const auto r2 = rho_hat_coeffs(two);
  EXPECT_DOUBLE_EQ(r2[0], 1.0);
  EXPECT_DOUBLE_EQ(r2[1], -1e-3);
  const double a = 0.3, b = -0.7;
  const std::vector<double> three{1.0, a, b};
  const auto r3 = rho_hat_coeffs(three);
  EXPECT_DOUBLE_EQ(r3[1], -a);
  EXPECT_NEAR(r3[2], a * a - b, 1e-15);
}

TEST(RhoHat, ZeroDensityThrows) {
  const std::vector<double> z{0.0, 1.0};
  EXPECT_THROW(rho_hat_coeffs(z), SolverError);
}

TEST(RhoHat, CauchyProductIsUnit) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> rho(11);
    for (double& r : rho) r = u(rng);
    rho[0] = (u(rng) < 0 ? -1 : 1) * (0.1 + 0.9 * std::abs(u(rng)));
    const auto rhat = rho_hat_coeffs(rho);
    for (std::size_t k = 0; k < rho.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += rho[j] * rhat[k - j];
      // scale by the size of the partial products to keep the check relative
      double mag = 0.0;
      for (std::size_t j = 0; j <= k; ++j) mag = std::max(mag, std::abs(rho[j] * rhat[k - j]));
      EXPECT_NEAR(s, k == 0 ? 1.0 : 0.0, 1e-12 * std::max(1.0, mag));
    }
  }
}

TEST(EulerRhs, HandEvaluation) {
  const State4 q(2.0, 0.5, -0.25, 3.0);
  const State4 dx(0.1, 0.2, 0.3, 0.4);
  const State4 dy(-0.5, 0.6, -0.7, 0.8);
  const double g = 1.4;
  const State4 r = euler_rhs(q, dx, dy, g);
  EXPECT_NEAR(r[kRho], -(0.5 * 0.1 + 2.0 * 0.2 - 0.25 * -0.5 + 2.0 * -0.7), 1e-15);
  EXPECT_NEAR(r[kU], -(0.5 * 0.2 - 0.25 * 0.6 + 0.4 / 2.0), 1e-15);
  EXPECT_NEAR(r[kV], -(0.5 * 0.3 - 0.25 * -0.7 + 0.8 / 2.0), 1e-15);
  EXPECT_NEAR(r[kP], -(0.5 * 0.4 - 0.25 * 0.8 + g * 3.0 * (0.2 - 0.7)), 1e-15);
}

TEST(Adomian, FirstTermIsRhs) {
  AdomianHistory h;
  h.value = {State4(1.2, 0.1, 0.2, 0.9)};
  h.dx = {State4(0.3, -0.1, 0.5, 0.2)};
  h.dy = {State4(0.0, 0.4, -0.2, 0.1)};
  EXPECT_LT((adomian_euler_terms(h, 0) - euler_rhs(h.value[0], h.dx[0], h.dy[0])).norm(), 1e-15);
}

TEST(Adomian, UniformStateGivesZero) {
  AdomianHistory h;
  h.value = {State4(1.0, 0.3, -0.2, 2.0)};
  h.dx = {State4::Zero()};
  h.dy = {State4::Zero()};
  EXPECT_EQ(adomian_euler_terms(h, 0), State4::Zero());
}

TEST(Adomian, MatchesLambdaDifferentiation) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const SmoothTerms t(4, rng);
    const double x = u(rng);
    const AdomianHistory h = t.history(x);
    for (int n = 0; n <= 3; ++n) {
      const State4 oracle = lambda_oracle(t, x, n);
      EXPECT_LT((adomian_euler_terms(h, n) - oracle).cwiseAbs().maxCoeff(), 1e-6) << "n=" << n;
    }
  }
}

TEST(Adomian, TwoDimensionalTermsUseBothDerivatives) {
  // the y terms mirror the x terms under the swap (x, u) <-> (y, v)
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  AdomianHistory hx, hy;
  for (int k = 0; k < 3; ++k) {
    State4 q(u(rng), u(rng), u(rng), u(rng)), d(u(rng), u(rng), u(rng), u(rng));
    if (k == 0) q[kRho] = q[kP] = 1.5;
    State4 qs = q, ds = d;
    std::swap(qs[kU], qs[kV]);
    std::swap(ds[kU], ds[kV]);
    hx.value.push_back(q);
    hx.dx.push_back(d);
    hx.dy.push_back(State4::Zero());
    hy.value.push_back(qs);
    hy.dx.push_back(State4::Zero());
    hy.dy.push_back(ds);
  }
  for (int n = 0; n < 3; ++n) {
    State4 a = adomian_euler_terms(hx, n), b = adomian_euler_terms(hy, n);
    std::swap(b[kU], b[kV]);
    EXPECT_LT((a - b).norm(), 1e-14);
  }
}
