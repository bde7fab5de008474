#pragma once

#include "abslee/types.hpp"

namespace abslee {

/// Constant nondimensional mean flow (Mach components).
struct MeanFlow {
  double m1 = 0.0;
  double m2 = 0.0;

  double mach() const;
  bool is_subsonic() const { return mach() < 1.0; }
};

/// Constant Jacobians of the linearized Euler system
///   dQ/dt + A0 dQ/dx + B0 dQ/dy = 0,  Q = (rho', u', v', p').
struct FluxMatrices {
  Matrix4 a0 = Matrix4::Zero();
  Matrix4 b0 = Matrix4::Zero();

  /// A0 * nx + B0 * ny.
  Matrix4 normal_matrix(const Vec2& normal) const { return a0 * normal.x() + b0 * normal.y(); }
};

FluxMatrices mean_flux_matrices(const MeanFlow& mean);

/// (A0 nx + B0 ny) q.
State4 directional_flux(const State4& q, const Vec2& normal, const FluxMatrices& fm);

/// Lax-Friedrichs face flux from the interior state qi towards the exterior
/// state qj across a face with unit normal pointing from i to j:
///   1/2 (A0 nx + B0 ny)(qi + qj) - 1/2 alpha (qj - qi).
/// The dissipation is a scalar multiple of the jump, which keeps the flux
/// conservative: flux(qi, qj, n) == -flux(qj, qi, -n).
State4 lax_friedrichs_flux(const State4& qi, const State4& qj, const Vec2& normal,
                           const FluxMatrices& fm, double alpha);

/// Spectral radius bound |M| + 1 (unit sound speed in the LEE scaling).
double max_wave_speed(const MeanFlow& mean);

}  // namespace abslee
