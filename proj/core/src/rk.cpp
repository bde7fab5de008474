#include "abslee/rk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace abslee {

RkScheme parse_rk_scheme(std::string_view text) {
  if (text == "rk2") return RkScheme::rk2;
  if (text == "rk4") return RkScheme::rk4;
  throw ConfigError("unknown Runge-Kutta scheme '" + std::string(text) + "'");
}

int stage_count(RkScheme scheme) { return scheme == RkScheme::rk2 ? 2 : 4; }

long step_count(double t_final, double dt) {
  // Tolerate round-off so that t_final = k * dt gives exactly k steps.
  return static_cast<long>(std::ceil(t_final / dt - 1e-9));
}

DGField rk_step(const DGField& q, double dt, RkScheme scheme, const FieldOperator& op) {
  DGField k1 = op.apply(q);
  DGField out = q;
  if (scheme == RkScheme::rk2) {
    DGField mid = q;
    mid.axpy(0.5 * dt, k1);
    const DGField k2 = op.apply(mid);
    out.axpy(dt, k2);
  } else {
    DGField stage = q;
    stage.axpy(0.5 * dt, k1);
    const DGField k2 = op.apply(stage);
    stage = q;
    stage.axpy(0.5 * dt, k2);
    const DGField k3 = op.apply(stage);
    stage = q;
    stage.axpy(dt, k3);
    const DGField k4 = op.apply(stage);
    out.axpy(dt / 6.0, k1);
    out.axpy(dt / 3.0, k2);
    out.axpy(dt / 3.0, k3);
    out.axpy(dt / 6.0, k4);
  }
  if (!out.all_finite()) throw SolverError("Runge-Kutta step produced non-finite values");
  return out;
}

RkRunResult run_rk(const DGField& q_init, const RKConfig& config, const FieldOperator& op) {
  if (!(config.dt > 0.0)) throw ConfigError("run_rk: dt must be positive");
  if (!(config.t_final >= 0.0)) throw ConfigError("run_rk: t_final must be non-negative");
  RkRunResult run;
  run.solution = q_init;
  const long n_steps = step_count(config.t_final, config.dt);
  for (long i = 0; i < n_steps; ++i) {
    const double h = std::min(config.dt, config.t_final - static_cast<double>(i) * config.dt);
    run.solution = rk_step(run.solution, h, config.scheme, op);
    ++run.steps;
  }
  run.stage_evaluations = static_cast<long>(run.steps) * stage_count(config.scheme);
  return run;
}

}  // namespace abslee
