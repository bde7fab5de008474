#include "abslee/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace abslee {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(v) + "'");
  return out;
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + std::string(key) + "': expected a boolean, got '" + std::string(v) + "'");
}

BoundaryRule to_rule(std::string_view key, std::string_view v) {
  try {
    return parse_boundary_rule(v);
  } catch (const Error& e) {
    throw ConfigError("key '" + std::string(key) + "': " + e.what());
  }
}

}  // namespace

Scheme parse_scheme(std::string_view text) {
  if (text == "abs") return Scheme::abs;
  if (text == "rk2") return Scheme::rk2;
  if (text == "rk4") return Scheme::rk4;
  throw ConfigError("unknown scheme '" + std::string(text) + "' (expected abs, rk2 or rk4)");
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::abs: return "abs";
    case Scheme::rk2: return "rk2";
    case Scheme::rk4: return "rk4";
  }
  return "?";
}

const std::vector<ConfigKey>& run_config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"mesh_path", "mesh file"},
      {"scheme", "abs, rk2 or rk4"},
      {"dg_order", "polynomial order 0, 1 or 2"},
      {"m1", "mean flow Mach number along x"},
      {"m2", "mean flow Mach number along y"},
      {"alpha", "flux dissipation: wave_speed (|M| + 1) or a number >= 0"},
      {"dt", "time step (ABS restart interval)"},
      {"t_final", "end time"},
      {"tol", "ABS series tolerance"},
      {"n_max", "ABS series term cap per step"},
      {"freeze_cells", "skip converged cells inside an ABS step"},
      {"bc_wall", "rule for edges tagged wall: wall or nonreflective"},
      {"bc_nonreflective", "rule for edges tagged nonreflective"},
      {"bc_free", "rule for edges tagged free"},
      {"output", "output path prefix; empty disables artifacts"},
      {"vtk", "also write a legacy VTK file"},
      {"ic", "gaussian_pulse or file"},
      {"ic_path", "modal coefficient file, for ic = file"},
      {"alpha1", "pulse width parameter"},
      {"eps1", "pulse amplitude"},
      {"pulse_density", "p (rho' = p') or zero"},
  };
  return keys;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "mesh_path") {
    mesh_path = std::string(value);
  } else if (key == "scheme") {
    try {
      scheme = parse_scheme(value);
    } catch (const ConfigError& e) {
      throw ConfigError("key 'scheme': " + std::string(e.what()));
    }
  } else if (key == "dg_order") {
    dg_order = to_int(key, value);
  } else if (key == "m1") {
    mean_flow.m1 = to_double(key, value);
    pulse.mach = mean_flow.m1;
  } else if (key == "m2") {
    mean_flow.m2 = to_double(key, value);
  } else if (key == "alpha") {
    alpha = value == "wave_speed" ? -1.0 : to_double(key, value);
    if (value != "wave_speed" && alpha < 0.0) throw ConfigError("key 'alpha': must be >= 0");
  } else if (key == "dt") {
    dt = to_double(key, value);
  } else if (key == "t_final") {
    t_final = to_double(key, value);
  } else if (key == "tol") {
    tol = to_double(key, value);
  } else if (key == "n_max") {
    n_max = to_int(key, value);
  } else if (key == "freeze_cells") {
    freeze_cells = to_bool(key, value);
  } else if (key == "bc_wall") {
    boundary.wall = to_rule(key, value);
  } else if (key == "bc_nonreflective") {
    boundary.nonreflective = to_rule(key, value);
  } else if (key == "bc_free") {
    boundary.free = to_rule(key, value);
  } else if (key == "output") {
    output_prefix = std::string(value);
  } else if (key == "vtk") {
    write_vtk = to_bool(key, value);
  } else if (key == "ic") {
    if (value == "gaussian_pulse") {
      ic = InitialCondition::gaussian_pulse;
    } else if (value == "file") {
      ic = InitialCondition::file;
    } else {
      throw ConfigError("key 'ic': expected gaussian_pulse or file, got '" + std::string(value) + "'");
    }
  } else if (key == "ic_path") {
    ic_path = std::string(value);
  } else if (key == "alpha1") {
    pulse.alpha1 = to_double(key, value);
  } else if (key == "eps1") {
    pulse.eps1 = to_double(key, value);
  } else if (key == "pulse_density") {
    if (value == "p") {
      pulse_density = true;
    } else if (value == "zero") {
      pulse_density = false;
    } else {
      throw ConfigError("key 'pulse_density': expected p or zero, got '" + std::string(value) + "'");
    }
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void RunConfig::validate() const {
  if (mesh_path.empty()) throw ConfigError("key 'mesh_path': missing");
  if (!std::filesystem::exists(mesh_path))
    throw ConfigError("key 'mesh_path': file not found: " + mesh_path.string());
  if (dg_order < 0 || dg_order > 2) throw ConfigError("key 'dg_order': must be 0, 1 or 2");
  if (!(dt > 0.0)) throw ConfigError("key 'dt': must be positive");
  if (!(t_final >= 0.0)) throw ConfigError("key 't_final': must be >= 0");
  if (!(tol > 0.0)) throw ConfigError("key 'tol': must be positive");
  if (n_max < 1) throw ConfigError("key 'n_max': must be >= 1");
  if (ic == InitialCondition::file) {
    if (ic_path.empty()) throw ConfigError("key 'ic_path': required when ic = file");
    if (!std::filesystem::exists(ic_path))
      throw ConfigError("key 'ic_path': file not found: " + ic_path.string());
  } else {
    try {
      pulse.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }
}

std::vector<std::string> RunConfig::warnings() const {
  std::vector<std::string> out;
  if (!mean_flow.is_subsonic()) out.emplace_back("mean flow is not subsonic (|M| >= 1)");
  if (!std::isfinite(mean_flow.m1) || !std::isfinite(mean_flow.m2)) out.emplace_back("mean flow is not finite");
  return out;
}

void RunConfig::write(std::ostream& out) const {
  std::ostringstream s;
  s.precision(17);
  s << "mesh_path = " << mesh_path.string() << '\n'
    << "scheme = " << to_string(scheme) << '\n'
    << "dg_order = " << dg_order << '\n'
    << "m1 = " << mean_flow.m1 << '\n'
    << "m2 = " << mean_flow.m2 << '\n'
    << "alpha = ";
  if (alpha < 0.0) {
    s << "wave_speed";
  } else {
    s << alpha;
  }
  s << '\n'
    << "dt = " << dt << '\n'
    << "t_final = " << t_final << '\n'
    << "tol = " << tol << '\n'
    << "n_max = " << n_max << '\n'
    << "freeze_cells = " << (freeze_cells ? "true" : "false") << '\n'
    << "bc_wall = " << to_string(boundary.wall) << '\n'
    << "bc_nonreflective = " << to_string(boundary.nonreflective) << '\n'
    << "bc_free = " << to_string(boundary.free) << '\n'
    << "output = " << output_prefix << '\n'
    << "vtk = " << (write_vtk ? "true" : "false") << '\n'
    << "ic = " << (ic == InitialCondition::file ? "file" : "gaussian_pulse") << '\n'
    << "ic_path = " << ic_path.string() << '\n'
    << "alpha1 = " << pulse.alpha1 << '\n'
    << "eps1 = " << pulse.eps1 << '\n'
    << "pulse_density = " << (pulse_density ? "p" : "zero") << '\n';
  out << s.str();
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
    const auto key = trim(v.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", lineno);
    try {
      cfg.set(key, v.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  RunConfig cfg = parse_run_config(in);
  // Relative paths inside a config file are relative to the file.
  const auto base = path.parent_path();
  if (!cfg.mesh_path.empty() && cfg.mesh_path.is_relative()) cfg.mesh_path = base / cfg.mesh_path;
  if (!cfg.ic_path.empty() && cfg.ic_path.is_relative()) cfg.ic_path = base / cfg.ic_path;
  return cfg;
}

}  // namespace abslee
