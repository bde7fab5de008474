#pragma once

#include "abslee/dg.hpp"
#include "abslee/exact.hpp"
#include "abslee/lee.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace abslee {

enum class Scheme { abs, rk2, rk4 };

Scheme parse_scheme(std::string_view text);
std::string_view to_string(Scheme scheme);

enum class InitialCondition { gaussian_pulse, file };

/// Everything needed to reproduce one simulation. Serialised as a flat
/// "key = value" file; see run_config_keys() for the vocabulary.
struct RunConfig {
  std::filesystem::path mesh_path;
  Scheme scheme = Scheme::abs;
  int dg_order = 1;
  MeanFlow mean_flow{0.5, 0.0};
  /// Lax-Friedrichs dissipation; negative means |M| + 1.
  double alpha = -1.0;
  double dt = 0.5;
  double t_final = 3.0;
  double tol = 1e-8;
  int n_max = 200;
  bool freeze_cells = false;
  BoundaryPolicy boundary;
  std::string output_prefix;  // empty: no artifacts written
  bool write_vtk = false;

  InitialCondition ic = InitialCondition::gaussian_pulse;
  PulseParams pulse;           // pulse.mach mirrors mean_flow.m1
  bool pulse_density = true;   // rho' = p' (true) or rho' = 0
  std::filesystem::path ic_path;  // modal sidecar, when ic == file

  /// Sets one key from its textual value; throws ConfigError naming the key.
  void set(std::string_view key, std::string_view value);
  /// Checks invariants (positive dt/tol, existing files, ...).
  void validate() const;
  /// Suspicious but accepted settings (e.g. supersonic mean flow).
  std::vector<std::string> warnings() const;
  void write(std::ostream& out) const;
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

/// All recognised keys, in the order write() emits them.
const std::vector<ConfigKey>& run_config_keys();

/// Parses "key = value" lines; '#' starts a comment. Throws ParseError with
/// the line number for malformed lines and ConfigError for bad keys/values.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace abslee
