#include "abslee/abs.hpp"

#include "abslee/rk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace abslee {

namespace {

void check_finite(const DGField& term, int index) {
  if (!term.all_finite()) {
    throw SolverError("ABS series term " + std::to_string(index) + " is not finite");
  }
}

}  // namespace

AbsStepResult abs_step(const DGField& q0, double dt, const FieldOperator& op, const AbsOptions& options) {
  if (!(dt >= 0.0)) throw ConfigError("abs_step: dt must be non-negative");
  if (!(options.tol > 0.0)) throw ConfigError("abs_step: tol must be positive");
  if (options.n_max < 1) throw ConfigError("abs_step: n_max must be at least 1");
  if (q0.n_cells() != op.n_cells() || q0.order() != op.order()) {
    throw Error("abs_step: field does not match the operator");
  }
  check_finite(q0, 0);

  const std::size_t nc = q0.n_cells();
  const auto areas = op.cell_areas();
  const auto neighbors = op.cell_neighbors();

  AbsStepResult result;
  result.solution = q0;
  AbsStepReport& report = result.report;
  std::vector<int> depth(nc, 0);
  std::vector<double> local(nc, 0.0);
  std::vector<std::uint8_t> active;
  if (options.freeze_cells) active.assign(nc, 1);

  if (options.keep_terms) {
    result.series.emplace();
    result.series->terms.push_back(q0);
  }

  DGField term = q0;
  DGField next(q0.order(), nc);
  for (int n = 0; n < options.n_max; ++n) {
    op.apply(term, next, active);
    next.scale(dt / static_cast<double>(n + 1));
    check_finite(next, n + 1);
    result.solution.axpy(1.0, next);

    double max_norm = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      local[c] = cell_l2_norm(next, c, areas[c]);
      max_norm = std::max(max_norm, local[c]);
      if (local[c] >= options.tol) depth[c] = n + 1;
    }
    report.iterations = n + 1;
    report.final_term_norm = max_norm;
    report.term_norms.push_back(max_norm);
    if (result.series) {
      result.series->terms.push_back(next);
      result.series->term_norms.push_back(max_norm);
    }
    if (max_norm < options.tol) {
      report.converged = true;
      break;
    }
    if (options.freeze_cells) {
      const double freeze_tol = 0.1 * options.tol;
      for (std::size_t c = 0; c < nc; ++c) {
        if (!active[c] || local[c] >= freeze_tol) continue;
        bool quiet = true;
        for (int nb : neighbors[c]) {
          if (nb >= 0 && local[static_cast<std::size_t>(nb)] >= freeze_tol) quiet = false;
        }
        if (quiet) active[c] = 0;
      }
    }
    std::swap(term, next);
  }

  report.max_cell_depth = nc ? *std::max_element(depth.begin(), depth.end()) : 0;
  report.depth_histogram.assign(static_cast<std::size_t>(report.max_cell_depth) + 1, 0);
  for (int d : depth) ++report.depth_histogram[static_cast<std::size_t>(d)];
  if (result.series) result.series->n_terms_used = depth;
  return result;
}

long AbsRunResult::total_terms() const {
  long total = 0;
  for (const auto& s : steps) total += s.iterations;
  return total;
}

int AbsRunResult::max_terms_per_step() const {
  int m = 0;
  for (const auto& s : steps) m = std::max(m, s.iterations);
  return m;
}

bool AbsRunResult::all_converged() const {
  return std::all_of(steps.begin(), steps.end(), [](const AbsStepReport& s) { return s.converged; });
}

AbsRunResult run_abs(const DGField& q_init, double t_final, double dt, const FieldOperator& op,
                     const AbsOptions& options) {
  if (!(dt > 0.0)) throw ConfigError("run_abs: dt must be positive");
  if (!(t_final >= 0.0)) throw ConfigError("run_abs: t_final must be non-negative");
  AbsRunResult run;
  run.solution = q_init;
  AbsOptions step_options = options;
  step_options.keep_terms = false;
  const long n_steps = step_count(t_final, dt);
  for (long i = 0; i < n_steps; ++i) {
    const double h = std::min(dt, t_final - static_cast<double>(i) * dt);
    AbsStepResult step = abs_step(run.solution, h, op, step_options);
    run.solution = std::move(step.solution);
    run.steps.push_back(std::move(step.report));
  }
  return run;
}

MatrixOperator::MatrixOperator(const Matrix4& m, std::size_t n_cells, int order)
    : m_(m), order_(order), areas_(n_cells, 1.0), neighbors_(n_cells, {-1, -1, -1}) {}

void MatrixOperator::apply(const DGField& in, DGField& out, std::span<const std::uint8_t> active) const {
  if (in.n_cells() != areas_.size() || in.order() != order_) throw Error("MatrixOperator: layout mismatch");
  if (!out.same_layout(in)) out = DGField(in.order(), in.n_cells());
  const Matrix4 mt = m_.transpose();
  for (std::size_t c = 0; c < in.n_cells(); ++c) {
    if (!active.empty() && !active[c]) {
      out.cell(c).setZero();
      continue;
    }
    out.cell(c) = in.cell(c) * mt;
  }
}

LinearEquivalence linear_abs_vs_rk_equivalence(const Matrix4& a, const State4& q0, double dt, int n_terms) {
  if (n_terms < 1) throw ConfigError("linear_abs_vs_rk_equivalence: n_terms must be >= 1");
  LinearEquivalence out;

  // ABS route: the vector recursion through the generic stepper.
  const MatrixOperator op(-a);
  DGField field(0, 1);
  field.cell(0).row(0) = q0.transpose();
  AbsOptions opts;
  opts.tol = std::numeric_limits<double>::min();
  opts.n_max = n_terms;
  out.abs_result = abs_step(field, dt, op, opts).solution.cell(0).row(0).transpose();

  // Taylor route: accumulate the matrix polynomial, then apply it once.
  const Matrix4 z = -a * dt;
  Matrix4 power = Matrix4::Identity();
  Matrix4 sum = Matrix4::Identity();
  double factorial = 1.0;
  for (int n = 1; n <= n_terms; ++n) {
    power = power * z;
    factorial *= n;
    sum += power / factorial;
  }
  out.taylor_result = sum * q0;
  return out;
}

}  // namespace abslee
