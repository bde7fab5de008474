#pragma once

#include "abslee/basis.hpp"
#include "abslee/lee.hpp"
#include "abslee/mesh.hpp"
#include "abslee/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace abslee {

/// Modal DG representation of a State4 field: for every cell, n_basis rows
/// of 4 coefficients (rho, u, v, p), stored contiguously.
class DGField {
 public:
  using CellBlock = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>>;
  using ConstCellBlock = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>>;

  DGField() = default;
  DGField(int order, std::size_t n_cells);

  int order() const { return order_; }
  int n_basis() const { return n_basis_; }
  std::size_t n_cells() const { return n_cells_; }

  std::span<double> coeffs() { return coeffs_; }
  std::span<const double> coeffs() const { return coeffs_; }

  CellBlock cell(std::size_t c) { return {coeffs_.data() + c * stride(), n_basis_, 4}; }
  ConstCellBlock cell(std::size_t c) const { return {coeffs_.data() + c * stride(), n_basis_, 4}; }
  /// Cell average (the coefficient of phi_0 == 1).
  State4 mean(std::size_t c) const { return cell(c).row(0).transpose(); }

  bool same_layout(const DGField& other) const {
    return order_ == other.order_ && n_cells_ == other.n_cells_;
  }
  bool all_finite() const;

  void set_zero();
  /// this += a * x
  void axpy(double a, const DGField& x);
  void scale(double a);

 private:
  std::size_t stride() const { return static_cast<std::size_t>(n_basis_) * 4; }

  int order_ = 0;
  int n_basis_ = 1;
  std::size_t n_cells_ = 0;
  std::vector<double> coeffs_;
};

enum class BoundaryRule { wall, nonreflective };

/// Maps each boundary tag to the rule used to build ghost states. "free"
/// defaults to the non-reflecting rule.
struct BoundaryPolicy {
  BoundaryRule wall = BoundaryRule::wall;
  BoundaryRule nonreflective = BoundaryRule::nonreflective;
  BoundaryRule free = BoundaryRule::nonreflective;

  BoundaryRule rule_for(BoundaryTag tag) const;
  void set(BoundaryTag tag, BoundaryRule rule);
};

BoundaryRule parse_boundary_rule(std::string_view text);
std::string_view to_string(BoundaryRule rule);

/// Slip wall ghost: normal velocity mirrored, everything else copied.
State4 apply_wall_bc(const State4& interior, const Vec2& normal);
Matrix4 wall_bc_matrix(const Vec2& normal);

/// Characteristic ghost: decompose (A0 nx + B0 ny) q, keep amplitudes whose
/// wave speed is >= 0 (leaving the domain), drop incoming ones.
State4 apply_nonreflective_bc(const State4& interior, const Vec2& normal, const FluxMatrices& fm);
Matrix4 nonreflective_bc_matrix(const Vec2& normal, const FluxMatrices& fm);

/// Eigen-decomposition of A0 nx + B0 ny in closed form: columns of
/// `right` are eigenvectors, `left` is its inverse.
struct CharacteristicBasis {
  Eigen::Vector4d speeds;
  Matrix4 right;
  Matrix4 left;
};
CharacteristicBasis characteristic_basis(const Vec2& normal, const FluxMatrices& fm);

/// A linear map between DG fields on one mesh. Both time integrators are
/// written against this interface so tests can substitute small surrogates.
class FieldOperator {
 public:
  virtual ~FieldOperator() = default;

  /// out = Op(in). When `active` is non-empty, only cells with a non-zero
  /// flag are computed; the others are set to zero.
  virtual void apply(const DGField& in, DGField& out,
                     std::span<const std::uint8_t> active = {}) const = 0;
  virtual int order() const = 0;
  virtual std::span<const double> cell_areas() const = 0;
  virtual std::span<const std::array<int, 3>> cell_neighbors() const = 0;

  std::size_t n_cells() const { return cell_areas().size(); }
  DGField apply(const DGField& in) const;
};

/// Weak-form DG discretisation of -(A0 dQ/dx + B0 dQ/dy) with the
/// Lax-Friedrichs flux, already multiplied by the inverse mass matrix, so a
/// semi-discrete system reads dQ/dt = Op(Q). For order 0 this is exactly
///   -(1/|S_i|) sum_faces |f| F(Q_i, Q_j, n_f).
/// Holds pointers to the geometry and basis; both must outlive it.
class SpatialOperator final : public FieldOperator {
 public:
  SpatialOperator(const GeometryCache& geom, const BasisSet& basis, const FluxMatrices& fm,
                  double alpha, const BoundaryPolicy& bc = {});

  void apply(const DGField& in, DGField& out, std::span<const std::uint8_t> active = {}) const override;
  using FieldOperator::apply;
  int order() const override { return basis_->order(); }
  std::span<const double> cell_areas() const override { return geom_->cell_area; }
  std::span<const std::array<int, 3>> cell_neighbors() const override { return geom_->cell_neighbors; }

  double alpha() const { return alpha_; }

 private:
  const GeometryCache* geom_;
  const BasisSet* basis_;
  FluxMatrices fm_;
  double alpha_;
  int nb_;
  int nq_;
  // Per cell: dx(i, j) = int_K dphi_i/dx phi_j, same for y (row-major nb x nb).
  std::vector<double> dx_;
  std::vector<double> dy_;
  // Per face: normal matrix A_n, and for boundary faces the matrix mapping
  // the interior trace to the numerical flux.
  std::vector<Matrix4> normal_matrix_;
  std::vector<Matrix4> boundary_flux_;
  std::vector<double> face_weight_;  // length * w_q, per face and point
};

/// Convenience wrapper: builds the operator and applies it once.
DGField spatial_operator(const DGField& q, const GeometryCache& geom, const BasisSet& basis,
                         const FluxMatrices& fm, double alpha, const BoundaryPolicy& bc = {});

using PointFunction = std::function<State4(const Vec2&)>;
using ScalarFunction = std::function<double(const Vec2&)>;

/// L2 projection onto the DG space, using a rule exact to `degree`.
DGField project_initial_condition(const PointFunction& fn, const GeometryCache& geom,
                                  const BasisSet& basis, int degree = 12);

/// Value of the field at reference point xi of cell c.
State4 evaluate(const DGField& q, const BasisSet& basis, std::size_t c, const Vec2& xi);
/// Value at a physical point known to lie in cell c.
State4 evaluate_at(const DGField& q, const GeometryCache& geom, const BasisSet& basis, std::size_t c,
                   const Vec2& x);

/// sqrt(int_K |q|^2) over one cell, all four components.
double cell_l2_norm(const DGField& q, std::size_t c, double area);

/// Relative L2 error ||q_k - ref|| / ||ref|| of one component k, with a
/// volume rule of at least `degree` (raised to 2 * order + 2 if lower).
/// Throws Error when the reference norm vanishes.
double l2_error(const DGField& q, const GeometryCache& geom, const BasisSet& basis,
                const ScalarFunction& reference, int component, int degree = 0);
/// Same, summed over all four components.
double l2_error(const DGField& q, const GeometryCache& geom, const BasisSet& basis,
                const PointFunction& reference, int degree = 0);

}  // namespace abslee
