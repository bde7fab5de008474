#pragma once

namespace abslee {

/// Bessel function of the first kind, order zero. Absolute error below 1e-12
/// for all finite x.
double bessel_j0(double x);

}  // namespace abslee
