#include "abslee/basis.hpp"

#include <algorithm>
#include <cmath>

namespace abslee {

namespace {

// Exponents (a, b) of xi^a eta^b, graded by total degree.
constexpr std::array<std::array<int, 2>, 6> kMonomials{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};

}  // namespace

BasisSet::BasisSet(int order)
    : order_(order),
      n_(basis_size(order)),
      volume_rule_(triangle_rule(std::max(2 * order, 4))),
      face_rule_(line_rule(std::max(2 * order + 1, 5))) {
  if (order < 0 || order > kMaxOrder) throw ConfigError("DG order must be 0, 1 or 2");

  // Gram-Schmidt in the normalised L2 inner product, run twice for accuracy.
  const TriangleRule exact = triangle_rule(2 * kMaxOrder + 2);
  Eigen::MatrixXd mono_at(exact.points.size(), n_);
  for (std::size_t q = 0; q < exact.points.size(); ++q) mono_at.row(static_cast<Eigen::Index>(q)) = monomials(exact.points[q]).transpose();
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(exact.weights.data(), static_cast<Eigen::Index>(exact.weights.size())) * 2.0;
  auto inner = [&](const Eigen::VectorXd& ci, const Eigen::VectorXd& cj) {
    const Eigen::VectorXd fi = mono_at * ci;
    const Eigen::VectorXd fj = mono_at * cj;
    return (w.array() * fi.array() * fj.array()).sum();
  };

  coeff_ = Eigen::MatrixXd::Identity(n_, n_);
  for (int i = 0; i < n_; ++i) {
    Eigen::VectorXd ci = coeff_.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const Eigen::VectorXd cj = coeff_.row(j).transpose();
        ci -= inner(ci, cj) * cj;
      }
    }
    ci /= std::sqrt(inner(ci, ci));
    coeff_.row(i) = ci.transpose();
  }

  stiff_xi_ = Eigen::MatrixXd::Zero(n_, n_);
  stiff_eta_ = Eigen::MatrixXd::Zero(n_, n_);
  for (std::size_t q = 0; q < volume_rule_.points.size(); ++q) {
    const Eigen::VectorXd phi = values(volume_rule_.points[q]);
    const auto grad = gradients(volume_rule_.points[q]);
    stiff_xi_ += volume_rule_.weights[q] * grad.col(0) * phi.transpose();
    stiff_eta_ += volume_rule_.weights[q] * grad.col(1) * phi.transpose();
  }

  const auto nq = static_cast<Eigen::Index>(face_rule_.points.size());
  for (int f = 0; f < 3; ++f) {
    for (int rev = 0; rev < 2; ++rev) {
      Eigen::MatrixXd vals(nq, n_);
      for (Eigen::Index q = 0; q < nq; ++q) {
        const double s = face_rule_.points[static_cast<std::size_t>(q)];
        vals.row(q) = values(face_point(f, rev ? 1.0 - s : s)).transpose();
      }
      face_values_[static_cast<std::size_t>(2 * f + rev)] = std::move(vals);
    }
  }
}

Eigen::VectorXd BasisSet::monomials(const Vec2& xi) const {
  Eigen::VectorXd m(n_);
  for (int k = 0; k < n_; ++k) {
    m(k) = std::pow(xi.x(), kMonomials[static_cast<std::size_t>(k)][0]) *
           std::pow(xi.y(), kMonomials[static_cast<std::size_t>(k)][1]);
  }
  return m;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> BasisSet::monomial_gradients(const Vec2& xi) const {
  Eigen::Matrix<double, Eigen::Dynamic, 2> g(n_, 2);
  for (int k = 0; k < n_; ++k) {
    const int a = kMonomials[static_cast<std::size_t>(k)][0];
    const int b = kMonomials[static_cast<std::size_t>(k)][1];
    g(k, 0) = a == 0 ? 0.0 : a * std::pow(xi.x(), a - 1) * std::pow(xi.y(), b);
    g(k, 1) = b == 0 ? 0.0 : b * std::pow(xi.x(), a) * std::pow(xi.y(), b - 1);
  }
  return g;
}

Eigen::VectorXd BasisSet::values(const Vec2& xi) const { return coeff_ * monomials(xi); }

Eigen::Matrix<double, Eigen::Dynamic, 2> BasisSet::gradients(const Vec2& xi) const {
  return coeff_ * monomial_gradients(xi);
}

Vec2 BasisSet::face_point(int local_face, double s) {
  static const std::array<Vec2, 3> v{Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  const Vec2& a = v[static_cast<std::size_t>(local_face)];
  const Vec2& b = v[static_cast<std::size_t>((local_face + 1) % 3)];
  return a + s * (b - a);
}

}  // namespace abslee
