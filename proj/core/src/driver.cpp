#include "abslee/driver.hpp"

#include "abslee/exact.hpp"
#include "abslee/field_io.hpp"
#include "abslee/rk.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace abslee {

Discretization::Discretization(Mesh mesh, int order, const MeanFlow& flow, const BoundaryPolicy& bc,
                               double alpha)
    : mesh_(std::move(mesh)),
      geom_(compute_geometry(mesh_)),
      basis_(order),
      flow_(flow),
      op_(geom_, basis_, mean_flux_matrices(flow), alpha < 0.0 ? max_wave_speed(flow) : alpha, bc) {}

void RunReport::write(std::ostream& out) const {
  std::ostringstream s;
  s.precision(17);
  s << "scheme = " << to_string(scheme) << '\n'
    << "dg_order = " << order << '\n'
    << "n_cells = " << n_cells << '\n'
    << "steps = " << steps << '\n'
    << "operator_evaluations = " << operator_evaluations << '\n';
  if (scheme == Scheme::abs) {
    s << "abs_total_terms = " << abs_total_terms << '\n'
      << "abs_max_terms_per_step = " << abs_max_terms_per_step << '\n'
      << "abs_sum_max_cell_depth = " << abs_sum_max_depth << '\n';
  }
  s << "converged = " << (converged ? "true" : "false") << '\n' << "wall_seconds = " << wall_seconds << '\n';
  if (pressure_error) s << "pressure_error = " << *pressure_error << '\n';
  out << s.str();
}

DGField initial_field(const RunConfig& config, const Discretization& disc) {
  if (config.ic == InitialCondition::file) {
    DGField q = load_modal(config.ic_path);
    if (q.order() != disc.order() || q.n_cells() != disc.mesh().n_cells())
      throw ConfigError("key 'ic_path': modal file does not match mesh/order");
    return q;
  }
  const PulseParams pulse = config.pulse;
  const bool density = config.pulse_density;
  return project_initial_condition([&](const Vec2& x) { return gaussian_pulse_state(x, pulse, density); },
                                   disc.geometry(), disc.basis());
}

SimulationResult simulate(const RunConfig& config, const Discretization& disc, const DGField& q0) {
  const auto start = std::chrono::steady_clock::now();
  SimulationResult out;
  RunReport& rep = out.report;
  rep.scheme = config.scheme;
  rep.order = disc.order();
  rep.n_cells = disc.mesh().n_cells();
  if (config.t_final == 0.0) {
    out.solution = q0;
  } else if (config.scheme == Scheme::abs) {
    AbsOptions opt;
    opt.tol = config.tol;
    opt.n_max = config.n_max;
    opt.freeze_cells = config.freeze_cells;
    AbsRunResult r = run_abs(q0, config.t_final, config.dt, disc.op(), opt);
    out.solution = std::move(r.solution);
    rep.steps = static_cast<long>(r.steps.size());
    rep.abs_total_terms = r.total_terms();
    rep.abs_max_terms_per_step = r.max_terms_per_step();
    for (const auto& s : r.steps) rep.abs_sum_max_depth += s.max_cell_depth;
    rep.operator_evaluations = rep.abs_total_terms;
    rep.converged = r.all_converged();
  } else {
    RKConfig rk{config.scheme == Scheme::rk2 ? RkScheme::rk2 : RkScheme::rk4, config.dt, config.t_final};
    RkRunResult r = run_rk(q0, rk, disc.op());
    out.solution = std::move(r.solution);
    rep.steps = r.steps;
    rep.operator_evaluations = r.stage_evaluations;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double pressure_error(const DGField& q, const Discretization& disc, const PulseParams& pulse, double t) {
  const Vec2 centre(pulse.mach * t, 0.0);
  double eta_max = 1.0;
  for (const auto& p : disc.mesh().nodes) eta_max = std::max(eta_max, (p - centre).norm());
  const PressureProfile exact(pulse, t, eta_max + 0.1);
  return l2_error(q, disc.geometry(), disc.basis(), [&](const Vec2& x) { return exact(x.x(), x.y()); }, kP);
}

namespace {

bool pulse_error_applies(const RunConfig& config) {
  return config.ic == InitialCondition::gaussian_pulse && config.mean_flow.m2 == 0.0;
}

}  // namespace

SimulationResult run(const RunConfig& config) {
  config.validate();
  Discretization disc(load_mesh(config.mesh_path), config.dg_order, config.mean_flow, config.boundary,
                      config.alpha);
  const DGField q0 = initial_field(config, disc);
  SimulationResult res = simulate(config, disc, q0);
  if (pulse_error_applies(config)) {
    PulseParams pulse = config.pulse;
    pulse.mach = config.mean_flow.m1;
    res.report.pressure_error = pressure_error(res.solution, disc, pulse, config.t_final);
  }
  if (!config.output_prefix.empty()) {
    const std::string prefix = config.output_prefix;
    auto open = [](const std::string& path) {
      std::ofstream f(path);
      if (!f) throw Error("cannot write " + path);
      return f;
    };
    {
      auto f = open(prefix + ".csv");
      write_field_csv(f, res.solution, disc.geometry(), disc.basis());
    }
    {
      auto f = open(prefix + ".modal");
      write_modal(f, res.solution);
    }
    {
      auto f = open(prefix + ".report");
      res.report.write(f);
    }
    if (config.write_vtk) {
      auto f = open(prefix + ".vtk");
      write_vtk(f, disc.mesh(), res.solution, disc.basis());
    }
  }
  return res;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error("fit_log_slope: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw Error("fit_log_slope: need at least two usable points");
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw Error("fit_log_slope: all x values coincide");
  return (n * sxy - sx * sy) / den;
}

std::optional<double> ConvergenceReport::slope(int order) const {
  for (const auto& [o, s] : slopes)
    if (o == order) return s;
  return std::nullopt;
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  std::ostringstream s;
  s.precision(17);
  s << "order,h,error\n";
  for (const auto& r : rows) s << r.order << ',' << r.h << ',' << r.error << '\n';
  out << s.str();
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<MeshCase>& meshes,
                                    const std::vector<int>& orders) {
  if (meshes.size() < 3) throw ConfigError("convergence study needs at least 3 meshes");
  ConvergenceReport rep;
  for (int order : orders) {
    std::vector<double> hs;
    std::vector<double> errs;
    for (const auto& mc : meshes) {
      ConvergenceRow row{order, mc.h, std::numeric_limits<double>::quiet_NaN(), {}};
      try {
        RunConfig cfg = base;
        cfg.dg_order = order;
        Discretization disc(mc.mesh, order, cfg.mean_flow, cfg.boundary, cfg.alpha);
        const SimulationResult r = simulate(cfg, disc, initial_field(cfg, disc));
        PulseParams pulse = cfg.pulse;
        pulse.mach = cfg.mean_flow.m1;
        row.error = pressure_error(r.solution, disc, pulse, cfg.t_final);
      } catch (const Error& e) {
        row.failure = e.what();
      }
      hs.push_back(row.h);
      errs.push_back(row.error);
      rep.rows.push_back(std::move(row));
    }
    try {
      rep.slopes.emplace_back(order, fit_log_slope(hs, errs));
    } catch (const Error&) {
      rep.slopes.emplace_back(order, std::numeric_limits<double>::quiet_NaN());
    }
  }
  return rep;
}

double cross_mesh_error(const Discretization& disc, const DGField& q, const Discretization& ref_disc,
                        const DGField& ref, int component) {
  if (component < -1 || component > 3) throw Error("cross_mesh_error: bad component");
  const PointLocator locator(ref_disc.mesh(), ref_disc.geometry());
  auto ref_at = [&](const Vec2& x) {
    const auto cell = locator.locate(x);
    if (!cell) throw Error("mesh mismatch: point outside the reference mesh");
    return evaluate_at(ref, ref_disc.geometry(), ref_disc.basis(), static_cast<std::size_t>(*cell), x);
  };
  if (component < 0) return l2_error(q, disc.geometry(), disc.basis(), PointFunction(ref_at));
  return l2_error(q, disc.geometry(), disc.basis(),
                  ScalarFunction([&](const Vec2& x) { return ref_at(x)[component]; }), component);
}

}  // namespace abslee
