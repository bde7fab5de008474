#include "abslee/dg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace abslee {

DGField::DGField(int order, std::size_t n_cells)
    : order_(order), n_basis_(basis_size(order)), n_cells_(n_cells),
      coeffs_(n_cells * static_cast<std::size_t>(basis_size(order)) * 4, 0.0) {
  if (order < 0 || order > kMaxOrder) throw ConfigError("DG order must be 0, 1 or 2");
}

bool DGField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double v) { return std::isfinite(v); });
}

void DGField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), 0.0); }

void DGField::axpy(double a, const DGField& x) {
  if (!same_layout(x)) throw Error("DGField::axpy: layout mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
}

void DGField::scale(double a) {
  for (double& v : coeffs_) v *= a;
}

BoundaryRule BoundaryPolicy::rule_for(BoundaryTag tag) const {
  switch (tag) {
    case BoundaryTag::wall: return wall;
    case BoundaryTag::nonreflective: return nonreflective;
    case BoundaryTag::free: return free;
  }
  return free;
}

void BoundaryPolicy::set(BoundaryTag tag, BoundaryRule rule) {
  switch (tag) {
    case BoundaryTag::wall: wall = rule; break;
    case BoundaryTag::nonreflective: nonreflective = rule; break;
    case BoundaryTag::free: free = rule; break;
  }
}

BoundaryRule parse_boundary_rule(std::string_view text) {
  if (text == "wall") return BoundaryRule::wall;
  if (text == "nonreflective") return BoundaryRule::nonreflective;
  throw ConfigError("unknown boundary rule '" + std::string(text) + "'");
}

std::string_view to_string(BoundaryRule rule) {
  return rule == BoundaryRule::wall ? "wall" : "nonreflective";
}

Matrix4 wall_bc_matrix(const Vec2& n) {
  Matrix4 g = Matrix4::Identity();
  // Velocity block I - 2 n n^T.
  g(kU, kU) = 1.0 - 2.0 * n.x() * n.x();
  g(kU, kV) = -2.0 * n.x() * n.y();
  g(kV, kU) = -2.0 * n.y() * n.x();
  g(kV, kV) = 1.0 - 2.0 * n.y() * n.y();
  return g;
}

State4 apply_wall_bc(const State4& interior, const Vec2& normal) {
  return wall_bc_matrix(normal) * interior;
}

CharacteristicBasis characteristic_basis(const Vec2& n, const FluxMatrices& fm) {
  // A0 nx + B0 ny = (M . n) I + K with K having eigenvalues +1, -1, 0, 0.
  const double mn = fm.a0(0, 0) * n.x() + fm.b0(0, 0) * n.y();
  CharacteristicBasis cb;
  cb.speeds << mn + 1.0, mn - 1.0, mn, mn;
  cb.right.col(0) << 1.0, n.x(), n.y(), 1.0;     // downstream acoustic
  cb.right.col(1) << 1.0, -n.x(), -n.y(), 1.0;   // upstream acoustic
  cb.right.col(2) << 1.0, 0.0, 0.0, 0.0;         // entropy
  cb.right.col(3) << 0.0, -n.y(), n.x(), 0.0;    // vorticity
  // Amplitudes: (p + u_n)/2, (p - u_n)/2, rho - p, u_t.
  cb.left.row(0) << 0.0, 0.5 * n.x(), 0.5 * n.y(), 0.5;
  cb.left.row(1) << 0.0, -0.5 * n.x(), -0.5 * n.y(), 0.5;
  cb.left.row(2) << 1.0, 0.0, 0.0, -1.0;
  cb.left.row(3) << 0.0, -n.y(), n.x(), 0.0;
  assert((cb.left * cb.right - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  return cb;
}

Matrix4 nonreflective_bc_matrix(const Vec2& normal, const FluxMatrices& fm) {
  const CharacteristicBasis cb = characteristic_basis(normal, fm);
  Eigen::Vector4d keep;
  for (int k = 0; k < 4; ++k) keep(k) = cb.speeds(k) >= 0.0 ? 1.0 : 0.0;
  return cb.right * keep.asDiagonal() * cb.left;
}

State4 apply_nonreflective_bc(const State4& interior, const Vec2& normal, const FluxMatrices& fm) {
  return nonreflective_bc_matrix(normal, fm) * interior;
}

DGField FieldOperator::apply(const DGField& in) const {
  DGField out(in.order(), in.n_cells());
  apply(in, out);
  return out;
}

SpatialOperator::SpatialOperator(const GeometryCache& geom, const BasisSet& basis,
                                 const FluxMatrices& fm, double alpha, const BoundaryPolicy& bc)
    : geom_(&geom), basis_(&basis), fm_(fm), alpha_(alpha), nb_(basis.size()),
      nq_(static_cast<int>(basis.face_rule().points.size())) {
  if (alpha < 0.0) throw ConfigError("Lax-Friedrichs dissipation must be non-negative");
  const std::size_t nc = geom.n_cells();
  const auto nbb = static_cast<std::size_t>(nb_ * nb_);
  dx_.resize(nc * nbb);
  dy_.resize(nc * nbb);
  const Eigen::MatrixXd& sxi = basis.stiffness_xi();
  const Eigen::MatrixXd& seta = basis.stiffness_eta();
  for (std::size_t c = 0; c < nc; ++c) {
    const Eigen::Matrix2d& jinv = geom.inverse_jacobian[c];
    const double detj = 2.0 * geom.cell_area[c];
    // d/dx = dxi/dx d/dxi + deta/dx d/deta
    const Eigen::MatrixXd dx = detj * (jinv(0, 0) * sxi + jinv(1, 0) * seta);
    const Eigen::MatrixXd dy = detj * (jinv(0, 1) * sxi + jinv(1, 1) * seta);
    for (int i = 0; i < nb_; ++i) {
      for (int j = 0; j < nb_; ++j) {
        dx_[c * nbb + static_cast<std::size_t>(i * nb_ + j)] = dx(i, j);
        dy_[c * nbb + static_cast<std::size_t>(i * nb_ + j)] = dy(i, j);
      }
    }
  }

  const std::size_t nf = geom.n_faces();
  normal_matrix_.resize(nf);
  boundary_flux_.assign(nf, Matrix4::Zero());
  face_weight_.resize(nf * static_cast<std::size_t>(nq_));
  for (std::size_t f = 0; f < nf; ++f) {
    const Face& face = geom.faces[f];
    normal_matrix_[f] = fm.normal_matrix(face.normal);
    for (int q = 0; q < nq_; ++q) {
      face_weight_[f * static_cast<std::size_t>(nq_) + static_cast<std::size_t>(q)] =
          face.length * basis.face_rule().weights[static_cast<std::size_t>(q)];
    }
    if (face.is_boundary()) {
      const Matrix4 ghost = bc.rule_for(face.tag) == BoundaryRule::wall
                                ? wall_bc_matrix(face.normal)
                                : nonreflective_bc_matrix(face.normal, fm);
      const Matrix4 id = Matrix4::Identity();
      boundary_flux_[f] = 0.5 * normal_matrix_[f] * (id + ghost) - 0.5 * alpha * (ghost - id);
    }
  }
}

void SpatialOperator::apply(const DGField& in, DGField& out, std::span<const std::uint8_t> active) const {
  const std::size_t nc = geom_->n_cells();
  if (in.n_cells() != nc || in.order() != basis_->order()) {
    throw Error("spatial operator: field does not match the mesh/basis it was built for");
  }
  if (!active.empty() && active.size() != nc) throw Error("spatial operator: active mask size mismatch");
  if (!out.same_layout(in)) out = DGField(in.order(), nc);

  const bool masked = !active.empty();
  const auto nq = static_cast<std::size_t>(nq_);
  const auto nb = static_cast<std::size_t>(nb_);
  std::vector<double> flux_buffer(geom_->n_faces() * nq * 4);

  // Pass 1: numerical flux at every face quadrature point, premultiplied by
  // the quadrature weight and face length.
  const auto nf = static_cast<std::ptrdiff_t>(geom_->n_faces());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    const Face& face = geom_->faces[f];
    if (masked && !active[static_cast<std::size_t>(face.owner)] &&
        (face.is_boundary() || !active[static_cast<std::size_t>(face.neighbor)])) {
      continue;
    }
    const auto own = in.cell(static_cast<std::size_t>(face.owner));
    const Eigen::MatrixXd& vo = basis_->face_values(face.owner_local, false);
    double* buf = flux_buffer.data() + f * nq * 4;
    if (face.is_boundary()) {
      for (std::size_t q = 0; q < nq; ++q) {
        State4 qm = State4::Zero();
        for (std::size_t j = 0; j < nb; ++j) qm += vo(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) * own.row(static_cast<Eigen::Index>(j)).transpose();
        const State4 flux = face_weight_[f * nq + q] * (boundary_flux_[f] * qm);
        for (int k = 0; k < 4; ++k) buf[q * 4 + static_cast<std::size_t>(k)] = flux(k);
      }
    } else {
      const auto nbr = in.cell(static_cast<std::size_t>(face.neighbor));
      const Eigen::MatrixXd& vn = basis_->face_values(face.neighbor_local, true);
      for (std::size_t q = 0; q < nq; ++q) {
        State4 qm = State4::Zero();
        State4 qp = State4::Zero();
        for (std::size_t j = 0; j < nb; ++j) {
          qm += vo(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) * own.row(static_cast<Eigen::Index>(j)).transpose();
          qp += vn(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j)) * nbr.row(static_cast<Eigen::Index>(j)).transpose();
        }
        const State4 flux =
            face_weight_[f * nq + q] * (0.5 * (normal_matrix_[f] * (qm + qp)) - 0.5 * alpha_ * (qp - qm));
        for (int k = 0; k < 4; ++k) buf[q * 4 + static_cast<std::size_t>(k)] = flux(k);
      }
    }
  }

  // Pass 2: per-cell volume term and gathered face fluxes. Every cell owns
  // its output block, so the result does not depend on thread scheduling.
  const auto ncs = static_cast<std::ptrdiff_t>(nc);
  const Matrix4 a0t = fm_.a0.transpose();
  const Matrix4 b0t = fm_.b0.transpose();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ci = 0; ci < ncs; ++ci) {
    const auto c = static_cast<std::size_t>(ci);
    auto res = out.cell(c);
    if (masked && !active[c]) {
      res.setZero();
      continue;
    }
    const auto qc = in.cell(c);
    // Rows of qc * A0^T are A0 applied to each modal coefficient.
    Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor, 6, 4> fa = qc * a0t;
    Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor, 6, 4> fb = qc * b0t;
    const double* dx = dx_.data() + c * nb * nb;
    const double* dy = dy_.data() + c * nb * nb;
    for (std::size_t i = 0; i < nb; ++i) {
      Eigen::RowVector4d acc = Eigen::RowVector4d::Zero();
      for (std::size_t j = 0; j < nb; ++j) {
        acc += dx[i * nb + j] * fa.row(static_cast<Eigen::Index>(j)) + dy[i * nb + j] * fb.row(static_cast<Eigen::Index>(j));
      }
      res.row(static_cast<Eigen::Index>(i)) = acc;
    }
    for (int k = 0; k < 3; ++k) {
      const auto f = static_cast<std::size_t>(geom_->cell_faces[c][static_cast<std::size_t>(k)]);
      const Face& face = geom_->faces[f];
      const bool is_owner = face.owner == static_cast<int>(c);
      // The stored flux points out of the owner.
      const double sign = is_owner ? -1.0 : 1.0;
      const Eigen::MatrixXd& v = basis_->face_values(k, !is_owner);
      const double* buf = flux_buffer.data() + f * nq * 4;
      for (std::size_t q = 0; q < nq; ++q) {
        const Eigen::RowVector4d flux(buf[q * 4], buf[q * 4 + 1], buf[q * 4 + 2], buf[q * 4 + 3]);
        for (std::size_t i = 0; i < nb; ++i) {
          res.row(static_cast<Eigen::Index>(i)) += sign * v(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) * flux;
        }
      }
    }
    res /= geom_->cell_area[c];
  }
}

DGField spatial_operator(const DGField& q, const GeometryCache& geom, const BasisSet& basis,
                         const FluxMatrices& fm, double alpha, const BoundaryPolicy& bc) {
  const SpatialOperator op(geom, basis, fm, alpha, bc);
  return op.apply(q);
}

DGField project_initial_condition(const PointFunction& fn, const GeometryCache& geom,
                                  const BasisSet& basis, int degree) {
  const TriangleRule rule = triangle_rule(std::max(degree, 2 * basis.order()));
  const std::size_t nc = geom.n_cells();
  DGField q(basis.order(), nc);
  std::vector<Eigen::VectorXd> phi;
  phi.reserve(rule.points.size());
  for (const auto& xi : rule.points) phi.push_back(basis.values(xi));
  for (std::size_t c = 0; c < nc; ++c) {
    auto block = q.cell(c);
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const State4 val = fn(geom.to_physical(static_cast<int>(c), rule.points[k]));
      // (1/|K|) int_K f phi_b = 2 * sum_q w_q f phi_b on the reference triangle.
      for (int b = 0; b < basis.size(); ++b) block.row(b) += 2.0 * rule.weights[k] * phi[k](b) * val.transpose();
    }
  }
  return q;
}

State4 evaluate(const DGField& q, const BasisSet& basis, std::size_t c, const Vec2& xi) {
  const Eigen::VectorXd phi = basis.values(xi);
  return (q.cell(c).transpose() * phi);
}

State4 evaluate_at(const DGField& q, const GeometryCache& geom, const BasisSet& basis, std::size_t c,
                   const Vec2& x) {
  return evaluate(q, basis, c, geom.to_reference(static_cast<int>(c), x));
}

double cell_l2_norm(const DGField& q, std::size_t c, double area) {
  return std::sqrt(area * q.cell(c).squaredNorm());
}

namespace {

template <class Diff>
double relative_error(const DGField& q, const GeometryCache& geom, const BasisSet& basis, int degree,
                      Diff&& diff) {
  if (q.n_cells() != geom.n_cells() || q.order() != basis.order()) {
    throw Error("l2_error: field does not match the mesh/basis");
  }
  const TriangleRule rule = triangle_rule(std::max(degree, 2 * basis.order() + 2));
  std::vector<Eigen::VectorXd> phi;
  for (const auto& xi : rule.points) phi.push_back(basis.values(xi));
  double err2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t c = 0; c < q.n_cells(); ++c) {
    const double jac = 2.0 * geom.cell_area[c];
    const auto block = q.cell(c);
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const State4 val = block.transpose() * phi[k];
      const auto [e2, r2] = diff(val, geom.to_physical(static_cast<int>(c), rule.points[k]));
      err2 += jac * rule.weights[k] * e2;
      ref2 += jac * rule.weights[k] * r2;
    }
  }
  if (!(ref2 > 0.0)) throw Error("l2_error: reference has zero norm, relative error undefined");
  return std::sqrt(err2 / ref2);
}

}  // namespace

double l2_error(const DGField& q, const GeometryCache& geom, const BasisSet& basis,
                const ScalarFunction& reference, int component, int degree) {
  if (component < 0 || component > 3) throw Error("l2_error: component out of range");
  return relative_error(q, geom, basis, degree, [&](const State4& val, const Vec2& x) {
    const double r = reference(x);
    const double e = val(component) - r;
    return std::pair{e * e, r * r};
  });
}

double l2_error(const DGField& q, const GeometryCache& geom, const BasisSet& basis,
                const PointFunction& reference, int degree) {
  return relative_error(q, geom, basis, degree, [&](const State4& val, const Vec2& x) {
    const State4 r = reference(x);
    return std::pair{(val - r).squaredNorm(), r.squaredNorm()};
  });
}

}  // namespace abslee
