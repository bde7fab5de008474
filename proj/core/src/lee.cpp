#include "abslee/lee.hpp"

#include <cmath>

namespace abslee {

double MeanFlow::mach() const { return std::hypot(m1, m2); }

FluxMatrices mean_flux_matrices(const MeanFlow& mean) {
  FluxMatrices fm;
  fm.a0.diagonal().setConstant(mean.m1);
  fm.a0(kRho, kU) = 1.0;
  fm.a0(kU, kP) = 1.0;
  fm.a0(kP, kU) = 1.0;

  fm.b0.diagonal().setConstant(mean.m2);
  fm.b0(kRho, kV) = 1.0;
  fm.b0(kV, kP) = 1.0;
  fm.b0(kP, kV) = 1.0;
  return fm;
}

State4 directional_flux(const State4& q, const Vec2& normal, const FluxMatrices& fm) {
  return fm.normal_matrix(normal) * q;
}

State4 lax_friedrichs_flux(const State4& qi, const State4& qj, const Vec2& normal,
                           const FluxMatrices& fm, double alpha) {
  return 0.5 * (fm.normal_matrix(normal) * (qi + qj)) - 0.5 * alpha * (qj - qi);
}

double max_wave_speed(const MeanFlow& mean) { return mean.mach() + 1.0; }

}  // namespace abslee
