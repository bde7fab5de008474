#pragma once

#include "abslee/quadrature.hpp"
#include "abslee/types.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace abslee {

inline constexpr int kMaxOrder = 2;

constexpr int basis_size(int order) { return (order + 1) * (order + 2) / 2; }

/// Orthonormal modal basis on the reference triangle (0,0),(1,0),(0,1),
/// obtained by Gram-Schmidt on the monomials 1, xi, eta, xi^2, xi*eta, eta^2.
/// Normalisation: (1/|T|) * int_T phi_i phi_j = delta_ij, so phi_0 == 1 and the
/// first modal coefficient of a field is its cell average. On an affine cell
/// K the mass matrix is |K| * I.
class BasisSet {
 public:
  explicit BasisSet(int order);

  int order() const { return order_; }
  int size() const { return n_; }

  /// Values of all basis functions at a reference point.
  Eigen::VectorXd values(const Vec2& xi) const;
  /// Reference gradients, one row per basis function (d/dxi, d/deta).
  Eigen::Matrix<double, Eigen::Dynamic, 2> gradients(const Vec2& xi) const;

  /// Volume rule exact to degree max(2 * order, 4).
  const TriangleRule& volume_rule() const { return volume_rule_; }
  /// Face rule on [0, 1] exact to degree max(2 * order + 1, 5).
  const Rule1D& face_rule() const { return face_rule_; }

  /// stiffness_xi(i, j) = int_T dphi_i/dxi phi_j, likewise for eta.
  const Eigen::MatrixXd& stiffness_xi() const { return stiff_xi_; }
  const Eigen::MatrixXd& stiffness_eta() const { return stiff_eta_; }

  /// Reference-triangle point at parameter s in [0, 1] along local face f,
  /// which runs from vertex f to vertex (f + 1) % 3.
  static Vec2 face_point(int local_face, double s);

  /// Basis values at the face quadrature points: rows are quadrature points.
  /// `reversed` evaluates at parameter 1 - s, which is how the neighbour on
  /// the other side of a conforming face sees the same physical point.
  const Eigen::MatrixXd& face_values(int local_face, bool reversed) const {
    return face_values_[static_cast<std::size_t>(2 * local_face + (reversed ? 1 : 0))];
  }

 private:
  Eigen::VectorXd monomials(const Vec2& xi) const;
  Eigen::Matrix<double, Eigen::Dynamic, 2> monomial_gradients(const Vec2& xi) const;

  int order_;
  int n_;
  Eigen::MatrixXd coeff_;  // phi_i = sum_m coeff_(i, m) * monomial_m
  TriangleRule volume_rule_;
  Rule1D face_rule_;
  Eigen::MatrixXd stiff_xi_;
  Eigen::MatrixXd stiff_eta_;
  std::array<Eigen::MatrixXd, 6> face_values_;
};

}  // namespace abslee
