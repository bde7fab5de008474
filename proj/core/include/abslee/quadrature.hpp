#pragma once

#include "abslee/types.hpp"

#include <vector>

namespace abslee {

struct Rule1D {
  std::vector<double> points;   // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

struct TriangleRule {
  std::vector<Vec2> points;     // on the reference triangle (0,0),(1,0),(0,1)
  std::vector<double> weights;  // sum to 1/2
  int degree = 0;
};

/// n-point Gauss-Legendre rule mapped to [0, 1]; exact for degree 2n - 1.
Rule1D gauss_legendre(int n);

/// Smallest Gauss-Legendre rule on [0, 1] exact for polynomials of `degree`.
Rule1D line_rule(int degree);

/// Collapsed (Duffy) tensor Gauss-Legendre rule on the reference triangle,
/// exact for polynomials of total `degree`. All weights are positive.
TriangleRule triangle_rule(int degree);

}  // namespace abslee
