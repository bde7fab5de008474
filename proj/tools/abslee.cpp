// Command-line driver: run, converge, compare, stability, mesh.
#include "abslee/config.hpp"
#include "abslee/driver.hpp"
#include "abslee/field_io.hpp"
#include "abslee/mesh.hpp"
#include "abslee/stability.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

namespace {

using namespace abslee;

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

// Registers "--<key> value" for every config key; values land in `overrides`.
void add_config_flags(CLI::App& app, std::map<std::string, std::string>& overrides) {
  for (const auto& key : run_config_keys()) {
    const std::string name(key.name);
    auto* opt = app.add_option_function<std::string>(
        "--" + name, [&overrides, name](const std::string& v) { overrides[name] = v; }, std::string(key.help));
    opt->type_name("VALUE");
  }
}

RunConfig build_config(const std::string& config_path, const std::map<std::string, std::string>& overrides) {
  RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  return cfg;
}

SideTags side_tags(const std::string& all, const std::string& left, const std::string& right,
                   const std::string& bottom, const std::string& top) {
  SideTags t = SideTags::all(parse_boundary_tag(all));
  if (!left.empty()) t.left = parse_boundary_tag(left);
  if (!right.empty()) t.right = parse_boundary_tag(right);
  if (!bottom.empty()) t.bottom = parse_boundary_tag(bottom);
  if (!top.empty()) t.top = parse_boundary_tag(top);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ABS-DG / RK-DG solver for the 2D linearized Euler equations"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run one simulation");
  std::string run_config;
  std::map<std::string, std::string> run_overrides;
  run_cmd->add_option("-c,--config", run_config, "key = value config file");
  add_config_flags(*run_cmd, run_overrides);

  // converge
  auto* conv_cmd = app.add_subcommand("converge", "grid convergence study against the exact pulse");
  std::string conv_config;
  std::map<std::string, std::string> conv_overrides;
  std::vector<double> conv_h{1.4, 0.7, 0.5, 0.26};
  std::vector<int> conv_orders{0, 1, 2};
  double conv_extent = 20.0;
  std::string conv_out;
  conv_cmd->add_option("-c,--config", conv_config, "base config (mesh_path is ignored)");
  conv_cmd->add_option("--sizes", conv_h, "target cell edge sizes")->delimiter(',');
  conv_cmd->add_option("--orders", conv_orders, "DG orders")->delimiter(',');
  conv_cmd->add_option("--extent", conv_extent, "side of the square domain centred at the origin");
  conv_cmd->add_option("--csv", conv_out, "write rows as CSV");
  add_config_flags(*conv_cmd, conv_overrides);

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "relative L2 difference between two fields");
  std::string mesh_a, field_a, mesh_b, field_b, component = "p";
  double oracle_t = -1.0;
  PulseParams pulse;
  cmp_cmd->add_option("--mesh-a", mesh_a, "mesh of the field under test")->required();
  cmp_cmd->add_option("--field-a", field_a, "modal file of the field under test")->required();
  cmp_cmd->add_option("--mesh-b", mesh_b, "reference mesh (defaults to mesh-a)");
  cmp_cmd->add_option("--field-b", field_b, "reference modal file");
  cmp_cmd->add_option("--oracle-t", oracle_t, "compare pressure against the exact pulse at this time");
  cmp_cmd->add_option("--m1", pulse.mach, "mean flow Mach number for the oracle");
  cmp_cmd->add_option("--alpha1", pulse.alpha1, "pulse width parameter for the oracle");
  cmp_cmd->add_option("--eps1", pulse.eps1, "pulse amplitude for the oracle");
  cmp_cmd->add_option("--component", component, "rho, u, v, p or all")
      ->check(CLI::IsMember({"rho", "u", "v", "p", "all"}));

  // stability
  auto* stab_cmd = app.add_subcommand("stability", "Von Neumann scan of the 1D first-order scheme");
  int stab_n = 5;
  double r_min = 0.0, r_max = 6.0;
  std::size_t r_count = 601, theta_count = 10000;
  std::string stab_out, env_out;
  stab_cmd->add_option("--n-max", stab_n, "largest term index");
  stab_cmd->add_option("--r-min", r_min);
  stab_cmd->add_option("--r-max", r_max);
  stab_cmd->add_option("--r-count", r_count);
  stab_cmd->add_option("--theta-count", theta_count);
  stab_cmd->add_option("--csv", stab_out, "n,r,sup_G table (default: stdout)");
  stab_cmd->add_option("--envelope", env_out, "theta,H curve");

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "generate a structured triangle mesh of a rectangle");
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  int nx = 10, ny = 10;
  std::string tag_all = "free", tag_l, tag_r, tag_b, tag_t, mesh_out;
  mesh_cmd->add_option("--x0", x0);
  mesh_cmd->add_option("--x1", x1);
  mesh_cmd->add_option("--y0", y0);
  mesh_cmd->add_option("--y1", y1);
  mesh_cmd->add_option("--nx", nx);
  mesh_cmd->add_option("--ny", ny);
  mesh_cmd->add_option("--tag", tag_all, "tag of all sides");
  mesh_cmd->add_option("--left", tag_l);
  mesh_cmd->add_option("--right", tag_r);
  mesh_cmd->add_option("--bottom", tag_b);
  mesh_cmd->add_option("--top", tag_t);
  mesh_cmd->add_option("-o,--output", mesh_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      const RunConfig cfg = build_config(run_config, run_overrides);
      for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << '\n';
      const SimulationResult res = run(cfg);
      res.report.write(std::cout);
      return res.report.converged ? 0 : kExitNoConvergence;
    }
    if (*conv_cmd) {
      const RunConfig cfg = build_config(conv_config, conv_overrides);
      std::vector<MeshCase> meshes;
      for (double h : conv_h) {
        const int n = std::max(1, static_cast<int>(std::lround(conv_extent / h)));
        const double half = 0.5 * conv_extent;
        meshes.push_back({make_rectangle_mesh(-half, half, -half, half, n, n), conv_extent / n});
      }
      const ConvergenceReport rep = convergence_study(cfg, meshes, conv_orders);
      rep.write_csv(std::cout);
      for (const auto& [order, slope] : rep.slopes) std::cout << "slope P" << order << " = " << slope << '\n';
      for (const auto& row : rep.rows)
        if (!row.failure.empty()) std::cerr << "P" << row.order << " h=" << row.h << ": " << row.failure << '\n';
      if (!conv_out.empty()) {
        std::ofstream f(conv_out);
        rep.write_csv(f);
      }
      return 0;
    }
    if (*cmp_cmd) {
      const int comp = component == "all" ? -1 : component == "rho" ? kRho : component == "u" ? kU
                                                : component == "v"   ? kV
                                                                     : kP;
      const DGField qa = load_modal(field_a);
      const Discretization da(load_mesh(mesh_a), qa.order(), MeanFlow{});
      double err = 0.0;
      if (oracle_t >= 0.0) {
        err = pressure_error(qa, da, pulse, oracle_t);
      } else {
        if (field_b.empty()) throw ConfigError("compare: need --field-b or --oracle-t");
        const DGField qb = load_modal(field_b);
        const Discretization db(load_mesh(mesh_b.empty() ? mesh_a : mesh_b), qb.order(), MeanFlow{});
        err = cross_mesh_error(da, qa, db, qb, comp);
      }
      std::cout.precision(17);
      std::cout << err << '\n';
      return 0;
    }
    if (*stab_cmd) {
      const auto r = linear_grid(r_min, r_max, r_count);
      const auto th = linear_grid(0.0, 2.0 * std::numbers::pi, theta_count);
      const StabilityScan scan = empirical_stability_scan(stab_n, r, th);
      if (stab_out.empty()) {
        scan.write_csv(std::cout);
      } else {
        std::ofstream f(stab_out);
        scan.write_csv(f);
      }
      if (!env_out.empty()) {
        std::ofstream f(env_out);
        scan.write_envelope_csv(f);
      }
      for (std::size_t n = 0; n < scan.threshold.size(); ++n)
        std::cerr << "n=" << n << " largest stable r on grid: " << scan.threshold[n]
                  << " (bound " << (n + 1) / std::numbers::sqrt2 << ")\n";
      return 0;
    }
    if (*mesh_cmd) {
      save_mesh(mesh_out, make_rectangle_mesh(x0, x1, y0, y1, nx, ny, side_tags(tag_all, tag_l, tag_r, tag_b, tag_t)));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
