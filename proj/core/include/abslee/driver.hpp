#pragma once

#include "abslee/abs.hpp"
#include "abslee/basis.hpp"
#include "abslee/config.hpp"
#include "abslee/dg.hpp"
#include "abslee/mesh.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abslee {

/// Mesh, geometry, basis and spatial operator for one (mesh, order, flow,
/// boundary) combination. Pinned in memory: the operator points into it.
class Discretization {
 public:
  /// alpha < 0 selects the default dissipation max_wave_speed(flow).
  Discretization(Mesh mesh, int order, const MeanFlow& flow, const BoundaryPolicy& bc = {},
                 double alpha = -1.0);
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  const Mesh& mesh() const { return mesh_; }
  const GeometryCache& geometry() const { return geom_; }
  const BasisSet& basis() const { return basis_; }
  const SpatialOperator& op() const { return op_; }
  const MeanFlow& flow() const { return flow_; }
  double alpha() const { return op_.alpha(); }
  int order() const { return basis_.order(); }

 private:
  Mesh mesh_;
  GeometryCache geom_;
  BasisSet basis_;
  MeanFlow flow_;
  SpatialOperator op_;
};

struct RunReport {
  Scheme scheme = Scheme::abs;
  int order = 0;
  std::size_t n_cells = 0;
  long steps = 0;
  /// Spatial operator applications (RK stages, or ABS series terms).
  long operator_evaluations = 0;
  /// ABS only: series terms summed over restarts, largest per-step count, and
  /// the sum over restarts of the per-step maximum cell depth.
  long abs_total_terms = 0;
  int abs_max_terms_per_step = 0;
  long abs_sum_max_depth = 0;
  bool converged = true;
  double wall_seconds = 0.0;
  /// Relative L2 pressure error against the exact pulse solution, when the
  /// run is a pulse run with mean flow along x.
  std::optional<double> pressure_error;

  void write(std::ostream& out) const;
};

struct SimulationResult {
  DGField solution;
  RunReport report;
};

/// Projected initial condition (pulse or modal file) for the config.
DGField initial_field(const RunConfig& config, const Discretization& disc);

/// Marches q0 to config.t_final with the configured scheme.
SimulationResult simulate(const RunConfig& config, const Discretization& disc, const DGField& q0);

/// Relative L2 error of the pressure against the exact pulse solution at t.
double pressure_error(const DGField& q, const Discretization& disc, const PulseParams& pulse, double t);

/// Loads the mesh, runs, evaluates the pulse error where applicable and
/// writes <prefix>.csv, <prefix>.modal, <prefix>.report (and .vtk) when an
/// output prefix is set.
SimulationResult run(const RunConfig& config);

struct ConvergenceRow {
  int order = 0;
  double h = 0.0;
  double error = 0.0;  // NaN when the run failed
  std::string failure;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<std::pair<int, double>> slopes;  // (order, fitted slope)

  std::optional<double> slope(int order) const;
  void write_csv(std::ostream& out) const;
};

struct MeshCase {
  Mesh mesh;
  double h = 0.0;
};

/// Runs every (mesh, order) pair with the base config (its mesh_path and
/// dg_order are ignored) and fits log(error) = slope * log(h) + c per order.
ConvergenceReport convergence_study(const RunConfig& base, const std::vector<MeshCase>& meshes,
                                    const std::vector<int>& orders);

/// Least-squares slope of log(y) against log(x), skipping non-finite pairs.
/// Throws Error with fewer than two usable points.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Relative L2 difference ||q - ref|| / ||ref|| over the mesh of `disc`, with
/// `ref` evaluated at disc's quadrature points by point location in
/// ref_disc. component in 0..3 selects one variable; -1 uses all four.
/// Throws Error when a quadrature point lies outside the reference mesh.
double cross_mesh_error(const Discretization& disc, const DGField& q, const Discretization& ref_disc,
                        const DGField& ref, int component = kP);

}  // namespace abslee
