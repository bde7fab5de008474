#pragma once

#include "abslee/dg.hpp"
#include "abslee/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace abslee {

struct AbsOptions {
  /// Series stops once the newest term's max-over-cells L2 norm is below tol.
  double tol = 1e-8;
  /// Hard cap on series terms per step; hitting it is reported, not fatal.
  int n_max = 200;
  /// Stop computing terms in cells whose own term and all face neighbours'
  /// terms dropped below tol / 10. Off by default.
  bool freeze_cells = false;
  /// Keep every term of the series in the result (memory heavy).
  bool keep_terms = false;
};

/// Outcome of one ABS step.
struct AbsStepReport {
  /// Number of series terms computed after Q0.
  int iterations = 0;
  double final_term_norm = 0.0;
  bool converged = false;
  /// Max-over-cells L2 norm of Q1 ... QN.
  std::vector<double> term_norms;
  /// depth_histogram[d] = number of cells whose last term with local norm
  /// >= tol has index d (d = 0 when Q1 already met the tolerance).
  std::vector<std::size_t> depth_histogram;
  /// Largest per-cell depth; the per-step maximum over cells.
  int max_cell_depth = 0;
};

/// Series terms Q0 ... QN of one step, with per-term norms and the per-cell
/// truncation index.
struct AdomianSeries {
  std::vector<DGField> terms;
  std::vector<double> term_norms;
  std::vector<int> n_terms_used;
};

struct AbsStepResult {
  DGField solution;
  AbsStepReport report;
  /// Filled when AbsOptions::keep_terms is set.
  std::optional<AdomianSeries> series;
};

/// One ABS step for the linear system dQ/dt = Op(Q):
///   Q_{n+1} = dt / (n + 1) * Op(Q_n),   result = sum_n Q_n.
/// Throws SolverError if a term turns non-finite.
AbsStepResult abs_step(const DGField& q0, double dt, const FieldOperator& op, const AbsOptions& options = {});

struct AbsRunResult {
  DGField solution;
  std::vector<AbsStepReport> steps;

  /// Series terms summed over all restarts.
  long total_terms() const;
  /// Largest per-step term count.
  int max_terms_per_step() const;
  bool all_converged() const;
};

/// Restarts abs_step from the accumulated solution until t_final; the last
/// step is shortened when t_final is not a multiple of dt.
AbsRunResult run_abs(const DGField& q_init, double t_final, double dt, const FieldOperator& op,
                     const AbsOptions& options = {});

/// Applies a fixed 4x4 matrix to every modal coefficient of every cell. Used
/// as a stand-in for the spatial operator on linear ODE systems.
class MatrixOperator final : public FieldOperator {
 public:
  explicit MatrixOperator(const Matrix4& m, std::size_t n_cells = 1, int order = 0);

  void apply(const DGField& in, DGField& out, std::span<const std::uint8_t> active = {}) const override;
  using FieldOperator::apply;
  int order() const override { return order_; }
  std::span<const double> cell_areas() const override { return areas_; }
  std::span<const std::array<int, 3>> cell_neighbors() const override { return neighbors_; }

 private:
  Matrix4 m_;
  int order_;
  std::vector<double> areas_;
  std::vector<std::array<int, 3>> neighbors_;
};

struct LinearEquivalence {
  State4 abs_result;
  State4 taylor_result;
};

/// dq/dt = -A q advanced by dt twice: through the ABS recursion (n_terms
/// terms after q0) and through the explicitly summed matrix Taylor series
/// sum_{n <= n_terms} (-A dt)^n / n! q0.
LinearEquivalence linear_abs_vs_rk_equivalence(const Matrix4& a, const State4& q0, double dt, int n_terms);

}  // namespace abslee
