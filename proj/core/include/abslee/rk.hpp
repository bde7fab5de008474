#pragma once

#include "abslee/dg.hpp"

#include <string_view>

namespace abslee {

enum class RkScheme { rk2, rk4 };

RkScheme parse_rk_scheme(std::string_view text);
int stage_count(RkScheme scheme);

/// Number of steps of size <= dt needed to reach t_final.
long step_count(double t_final, double dt);

struct RKConfig {
  RkScheme scheme = RkScheme::rk2;
  double dt = 0.02;
  double t_final = 1.0;
};

/// One explicit step of dQ/dt = Op(Q): RK2 is the midpoint rule, RK4 the
/// classical four-stage scheme. Throws SolverError on non-finite output.
DGField rk_step(const DGField& q, double dt, RkScheme scheme, const FieldOperator& op);

struct RkRunResult {
  DGField solution;
  int steps = 0;
  /// steps * stages, i.e. operator evaluations.
  long stage_evaluations = 0;
};

/// Marches to config.t_final; the last step is shortened if needed.
RkRunResult run_rk(const DGField& q_init, const RKConfig& config, const FieldOperator& op);

}  // namespace abslee
