#include "abslee/abs.hpp"
#include "abslee/exact.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace abslee;

namespace {

struct PulseSetup {
  GeometryCache geom;
  BasisSet basis;
  SpatialOperator op;
  DGField q0;

  PulseSetup(int order, int n, double extent)
      : geom(compute_geometry(make_rectangle_mesh(-extent, extent, -extent, extent, n, n))),
        basis(order),
        op(geom, basis, mean_flux_matrices({0.5, 0.0}), 1.5),
        q0(project_initial_condition([](const Vec2& x) { return gaussian_pulse_state(x, PulseParams{}); }, geom,
                                     basis)) {}
};

DGField single_cell(const State4& v) {
  DGField q(0, 1);
  q.cell(0).row(0) = v.transpose();
  return q;
}

State4 cell_value(const DGField& q) { return q.mean(0); }

double max_abs(const DGField& q) {
  double m = 0.0;
  for (double v : q.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(AbsStep, ZeroStepIsIdentity) {
  const PulseSetup s(1, 6, 3.0);
  const AbsStepResult r = abs_step(s.q0, 0.0, s.op);
  EXPECT_TRUE(r.report.converged);
  for (std::size_t i = 0; i < s.q0.coeffs().size(); ++i) EXPECT_EQ(r.solution.coeffs()[i], s.q0.coeffs()[i]);
}

TEST(AbsStep, RestStateStopsAfterOneZeroTerm) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(0, 1, 0, 1, 3, 3, SideTags::all(BoundaryTag::wall)));
  const BasisSet b(1);
  const SpatialOperator op(g, b, mean_flux_matrices({0.5, 0.0}), 1.5);
  const DGField q = project_initial_condition([](const Vec2&) { return State4(0.3, 0, 0, 0.3); }, g, b);
  const AbsStepResult r = abs_step(q, 0.5, op);
  EXPECT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 1);
  EXPECT_LT(max_abs(r.solution) - 0.3, 1e-15);
}

TEST(AbsStep, ScalarDecayMatchesExponential) {
  const MatrixOperator op(-Matrix4::Identity());
  AbsOptions opt;
  opt.tol = 1e-15;
  const AbsStepResult r = abs_step(single_cell(State4(1, 2, -1, 0.5)), 0.3, op, opt);
  EXPECT_TRUE(r.report.converged);
  EXPECT_LT((cell_value(r.solution) - std::exp(-0.3) * State4(1, 2, -1, 0.5)).norm(), 1e-15);
}

TEST(AbsStep, TermNormsFollowTaylorCoefficients) {
  const MatrixOperator op(-2.0 * Matrix4::Identity());
  AbsOptions opt;
  opt.tol = 1e-12;
  opt.keep_terms = true;
  const AbsStepResult r = abs_step(single_cell(State4(1, 0, 0, 0)), 0.5, op, opt);
  ASSERT_TRUE(r.series.has_value());
  double fact = 1.0;
  for (std::size_t n = 1; n < r.series->terms.size(); ++n) {
    fact *= static_cast<double>(n);
    EXPECT_NEAR(cell_value(r.series->terms[n])[0], std::pow(-1.0, n) / fact, 1e-15);
    EXPECT_NEAR(r.report.term_norms[n - 1], 1.0 / fact, 1e-15);
  }
}

TEST(AbsStep, CapReportsNonConvergence) {
  const PulseSetup s(0, 6, 3.0);
  AbsOptions opt;
  opt.n_max = 3;
  const AbsStepResult r = abs_step(s.q0, 0.5, s.op, opt);
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 3);
  EXPECT_EQ(r.report.term_norms.size(), 3u);
}

TEST(AbsStep, NonFiniteTermThrows) {
  const MatrixOperator op(-Matrix4::Identity());
  EXPECT_THROW(abs_step(single_cell(State4(std::nan(""), 0, 0, 0)), 0.1, op), SolverError);
}

TEST(AbsStep, DepthAccounting) {
  const PulseSetup s(1, 10, 5.0);
  const AbsStepResult r = abs_step(s.q0, 0.2, s.op);
  std::size_t total = 0;
  int deepest = 0;
  for (std::size_t d = 0; d < r.report.depth_histogram.size(); ++d) {
    total += r.report.depth_histogram[d];
    if (r.report.depth_histogram[d] > 0) deepest = static_cast<int>(d);
  }
  EXPECT_EQ(total, s.geom.n_cells());
  EXPECT_EQ(deepest, r.report.max_cell_depth);
  EXPECT_LE(r.report.max_cell_depth, r.report.iterations);
  // cells far from the pulse need fewer terms than the pulse core
  EXPECT_GT(r.report.depth_histogram[0] + r.report.depth_histogram[1], 0u);
}

TEST(AbsStep, FreezingAgreesWithFullSeries) {
  const PulseSetup s(1, 12, 6.0);
  AbsOptions full, frozen;
  frozen.freeze_cells = true;
  const DGField a = abs_step(s.q0, 0.3, s.op, full).solution;
  const DGField b = abs_step(s.q0, 0.3, s.op, frozen).solution;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) diff = std::max(diff, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  EXPECT_LT(diff, full.tol);
}

TEST(AbsStep, TermScalingWithStep) {
  const PulseSetup s(2, 6, 3.0);
  AbsOptions opt;
  opt.keep_terms = true;
  opt.tol = std::numeric_limits<double>::min();
  opt.n_max = 10;
  const AbsStepResult a = abs_step(s.q0, 0.4, s.op, opt);
  const AbsStepResult b = abs_step(s.q0, 0.2, s.op, opt);
  for (int n = 1; n <= 10; ++n) {
    const auto& ta = a.series->terms[static_cast<std::size_t>(n)];
    const auto& tb = b.series->terms[static_cast<std::size_t>(n)];
    const double scale = std::ldexp(1.0, n);
    for (std::size_t i = 0; i < ta.coeffs().size(); ++i) {
      if (tb.coeffs()[i] == 0.0) continue;
      EXPECT_NEAR(ta.coeffs()[i] / tb.coeffs()[i], scale, 1e-12 * scale);
    }
  }
}

TEST(AbsStep, TermNormsDecayPastPeak) {
  // CFL dt/h = 2.5: the terms first grow like (dt * rho(Op))^n / n!, then decay.
  const double extent = 4.0;
  const int n = 20;
  const PulseSetup s(0, n, extent);
  const double h = 2.0 * extent / n;
  const AbsStepResult r = abs_step(s.q0, 2.5 * h, s.op);
  ASSERT_TRUE(r.report.converged);
  const auto& tn = r.report.term_norms;
  const auto peak = static_cast<std::size_t>(std::max_element(tn.begin(), tn.end()) - tn.begin());
  for (std::size_t k = peak; k + 2 < tn.size(); ++k) EXPECT_LT(tn[k + 2], tn[k]) << k;
}

TEST(RunAbs, SingleStepMatchesAbsStep) {
  const PulseSetup s(1, 6, 3.0);
  const AbsRunResult run = run_abs(s.q0, 0.5, 0.5, s.op);
  const AbsStepResult step = abs_step(s.q0, 0.5, s.op);
  ASSERT_EQ(run.steps.size(), 1u);
  for (std::size_t i = 0; i < step.solution.coeffs().size(); ++i)
    EXPECT_EQ(run.solution.coeffs()[i], step.solution.coeffs()[i]);
  EXPECT_EQ(run.total_terms(), step.report.iterations);
}

TEST(RunAbs, StepCountAndShortLastStep) {
  const MatrixOperator op(-Matrix4::Identity());
  AbsOptions opt;
  opt.tol = 1e-15;
  const AbsRunResult six = run_abs(single_cell(State4(1, 0, 0, 0)), 3.0, 0.5, op, opt);
  EXPECT_EQ(six.steps.size(), 6u);
  EXPECT_TRUE(six.all_converged());
  const AbsRunResult r = run_abs(single_cell(State4(1, 0, 0, 0)), 1.1, 0.5, op, opt);
  EXPECT_EQ(r.steps.size(), 3u);
  EXPECT_NEAR(cell_value(r.solution)[0], std::exp(-1.1), 1e-14);
}

TEST(RunAbs, SemigroupProperty) {
  Matrix4 a;
  a << -0.5, 0.3, 0, 0.1, -0.2, -1.0, 0.4, 0, 0, 0.2, -0.3, 0.5, 0.1, 0, -0.6, -0.8;
  const MatrixOperator op(a);
  AbsOptions opt;
  opt.tol = 1e-10;
  const DGField q = single_cell(State4(1, -0.5, 0.25, 2));
  const DGField one = abs_step(q, 0.8, op, opt).solution;
  const DGField two = run_abs(q, 0.8, 0.4, op, opt).solution;
  EXPECT_LT((cell_value(one) - cell_value(two)).cwiseAbs().maxCoeff(), 10 * opt.tol);
}

TEST(LinearEquivalence, ZeroMatrix) {
  const State4 q0(1, 2, 3, 4);
  const LinearEquivalence e = linear_abs_vs_rk_equivalence(Matrix4::Zero(), q0, 0.7, 10);
  EXPECT_EQ(e.abs_result, q0);
  EXPECT_EQ(e.taylor_result, q0);
}

TEST(LinearEquivalence, IdentityGivesExponential) {
  const State4 q0(1, -2, 0.5, 3);
  const LinearEquivalence e = linear_abs_vs_rk_equivalence(Matrix4::Identity(), q0, 1.0, 20);
  EXPECT_LT((e.abs_result - std::exp(-1.0) * q0).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((e.taylor_result - std::exp(-1.0) * q0).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(LinearEquivalence, RandomSystems) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix4 a;
    State4 q0;
    for (int i = 0; i < 4; ++i) {
      q0[i] = u(rng);
      for (int j = 0; j < 4; ++j) a(i, j) = u(rng);
    }
    const LinearEquivalence e = linear_abs_vs_rk_equivalence(a, q0, 0.5, 15);
    EXPECT_LT((e.abs_result - e.taylor_result).cwiseAbs().maxCoeff(), 1e-13);
  }
}
