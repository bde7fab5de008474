#include "abslee/dg.hpp"
#include "abslee/exact.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace abslee;

namespace {

bool touches_boundary(const GeometryCache& g, std::size_t c) {
  for (int nb : g.cell_neighbors[c])
    if (nb < 0) return true;
  return false;
}

// Splits the reference triangle `levels` times and integrates fn over the
// physical cell with a degree-12 rule on every piece.
double refined_cell_integral(const GeometryCache& g, int c, const ScalarFunction& fn, int levels) {
  std::vector<std::array<Vec2, 3>> tris{{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}};
  for (int l = 0; l < levels; ++l) {
    std::vector<std::array<Vec2, 3>> next;
    for (const auto& t : tris) {
      const Vec2 m01 = 0.5 * (t[0] + t[1]), m12 = 0.5 * (t[1] + t[2]), m20 = 0.5 * (t[2] + t[0]);
      next.push_back({t[0], m01, m20});
      next.push_back({m01, t[1], m12});
      next.push_back({m20, m12, t[2]});
      next.push_back({m12, m20, m01});
    }
    tris = std::move(next);
  }
  const TriangleRule r = triangle_rule(12);
  const double jac = 2.0 * g.cell_area[static_cast<std::size_t>(c)];
  double s = 0.0;
  for (const auto& t : tris) {
    const double sub = std::abs((t[1] - t[0]).x() * (t[2] - t[0]).y() - (t[1] - t[0]).y() * (t[2] - t[0]).x());
    for (std::size_t q = 0; q < r.points.size(); ++q) {
      const Vec2 xi = t[0] + r.points[q].x() * (t[1] - t[0]) + r.points[q].y() * (t[2] - t[0]);
      s += sub * r.weights[q] * fn(g.to_physical(c, xi));
    }
  }
  return s * jac;
}

}  // namespace

TEST(Field, LayoutAndArithmetic) {
  DGField a(2, 3), b(2, 3);
  EXPECT_EQ(a.n_basis(), 6);
  EXPECT_EQ(a.coeffs().size(), 3u * 6u * 4u);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    a.coeffs()[i] = static_cast<double>(i);
    b.coeffs()[i] = 1.0;
  }
  a.axpy(2.0, b);
  a.scale(0.5);
  EXPECT_DOUBLE_EQ(a.coeffs()[5], 3.5);
  EXPECT_EQ(a.cell(1)(0, 0), a.coeffs()[24]);
  EXPECT_TRUE(a.all_finite());
  a.coeffs()[7] = std::nan("");
  EXPECT_FALSE(a.all_finite());
  EXPECT_FALSE(a.same_layout(DGField(1, 3)));
}

TEST(Boundary, WallExamples) {
  EXPECT_EQ(apply_wall_bc(State4(0, 1, 0, 0), Vec2(1, 0)), State4(0, -1, 0, 0));
  EXPECT_EQ(apply_wall_bc(State4(0.2, 0, 0.7, 0.1), Vec2(1, 0)), State4(0.2, 0, 0.7, 0.1));
  EXPECT_LT((apply_wall_bc(State4(0, 0.6, 0.8, 0.1), Vec2(0, 1)) - State4(0, 0.6, -0.8, 0.1)).norm(), 1e-15);
  const Vec2 n(0.6, -0.8);
  const State4 g = apply_wall_bc(State4(1, 0.3, 0.4, 2), n);
  EXPECT_NEAR(g[kU] * n.x() + g[kV] * n.y(), -(0.3 * 0.6 - 0.4 * 0.8), 1e-15);
}

TEST(Boundary, NonreflectiveExamples) {
  const FluxMatrices fm = mean_flux_matrices({0.5, 0.0});
  const Vec2 n(1, 0);
  EXPECT_EQ(apply_nonreflective_bc(State4::Zero(), n, fm), State4::Zero());
  const State4 outgoing(1, 1, 0, 1);
  EXPECT_LT((apply_nonreflective_bc(outgoing, n, fm) - outgoing).norm(), 1e-14);
  const State4 incoming(1, -1, 0, 1);
  EXPECT_LT(apply_nonreflective_bc(incoming, n, fm).norm(), 1e-14);
  const State4 entropy(1, 0, 0, 0);
  EXPECT_LT((apply_nonreflective_bc(entropy, n, fm) - entropy).norm(), 1e-14);
  // inflow boundary: the convected modes come in, only the forward acoustic wave leaves
  EXPECT_LT(apply_nonreflective_bc(entropy, -n, fm).norm(), 1e-14);
}

TEST(Boundary, CharacteristicBasisDiagonalises) {
  const FluxMatrices fm = mean_flux_matrices({0.3, -0.4});
  for (double th : {0.0, 0.7, 2.5, -1.9}) {
    const Vec2 n(std::cos(th), std::sin(th));
    const CharacteristicBasis cb = characteristic_basis(n, fm);
    EXPECT_LT((cb.left * cb.right - Matrix4::Identity()).norm(), 1e-13);
    const Matrix4 d = cb.left * fm.normal_matrix(n) * cb.right;
    EXPECT_LT((d - Matrix4(cb.speeds.asDiagonal())).norm(), 1e-13);
    const Matrix4 g = nonreflective_bc_matrix(n, fm);
    EXPECT_LT((g * g - g).norm(), 1e-13);  // projector
  }
}

TEST(Boundary, PolicyParsing) {
  BoundaryPolicy p;
  EXPECT_EQ(p.rule_for(BoundaryTag::free), BoundaryRule::nonreflective);
  p.set(BoundaryTag::free, BoundaryRule::wall);
  EXPECT_EQ(p.rule_for(BoundaryTag::free), BoundaryRule::wall);
  EXPECT_EQ(parse_boundary_rule("wall"), BoundaryRule::wall);
  EXPECT_EQ(to_string(BoundaryRule::nonreflective), "nonreflective");
  EXPECT_THROW(parse_boundary_rule("absorbing"), ConfigError);
}

class DgOrder : public ::testing::TestWithParam<int> {};

TEST_P(DgOrder, ProjectionOfConstant) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(-1, 1, -1, 1, 4, 4));
  const BasisSet b(GetParam());
  const State4 c(0.3, -1.2, 2.0, 0.7);
  const DGField q = project_initial_condition([&](const Vec2&) { return c; }, g, b);
  for (std::size_t k = 0; k < q.n_cells(); ++k) {
    EXPECT_LT((q.mean(k) - c).norm(), 1e-13);
    for (int i = 1; i < q.n_basis(); ++i) EXPECT_LT(q.cell(k).row(i).norm(), 1e-13);
  }
}

TEST_P(DgOrder, ConstantFieldHasZeroInteriorResidual) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(0, 1, 0, 1, 5, 5));
  const BasisSet b(GetParam());
  const FluxMatrices fm = mean_flux_matrices({0.5, 0.2});
  const DGField q = project_initial_condition([](const Vec2&) { return State4(1, 2, -1, 0.5); }, g, b);
  const DGField out = spatial_operator(q, g, b, fm, 1.7);
  for (std::size_t c = 0; c < g.n_cells(); ++c) {
    if (touches_boundary(g, c)) continue;
    EXPECT_LT(out.cell(c).norm(), 1e-13 / g.min_face_length);
  }
}

TEST_P(DgOrder, RestStateWithWallsIsSteady) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(0, 1, 0, 1, 4, 4, SideTags::all(BoundaryTag::wall)));
  const BasisSet b(GetParam());
  const FluxMatrices fm = mean_flux_matrices({0.0, 0.0});
  const DGField q = project_initial_condition([](const Vec2&) { return State4(1, 0, 0, 1); }, g, b);
  EXPECT_LT(Eigen::Map<const Eigen::VectorXd>(spatial_operator(q, g, b, fm, 1.0).coeffs().data(),
                                               static_cast<Eigen::Index>(q.coeffs().size()))
                .norm(),
            1e-13 / g.min_face_length);
}

TEST_P(DgOrder, OperatorIsLinear) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(0, 1, 0, 2, 3, 4, {BoundaryTag::wall}));
  const BasisSet b(GetParam());
  const FluxMatrices fm = mean_flux_matrices({0.5, 0.0});
  const SpatialOperator op(g, b, fm, 1.5);
  DGField x(GetParam(), g.n_cells()), y(GetParam(), g.n_cells());
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    x.coeffs()[i] = std::sin(1.0 + static_cast<double>(i));
    y.coeffs()[i] = std::cos(3.0 * static_cast<double>(i));
  }
  DGField z = x;
  z.scale(2.0);
  z.axpy(-3.0, y);
  DGField expect = op.apply(x);
  expect.scale(2.0);
  expect.axpy(-3.0, op.apply(y));
  const DGField got = op.apply(z);
  for (std::size_t i = 0; i < got.coeffs().size(); ++i) EXPECT_NEAR(got.coeffs()[i], expect.coeffs()[i], 1e-12);
}

TEST_P(DgOrder, ActiveMaskZeroesInactiveCells) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(0, 1, 0, 1, 3, 3));
  const BasisSet b(GetParam());
  const SpatialOperator op(g, b, mean_flux_matrices({0.5, 0.0}), 1.5);
  DGField x(GetParam(), g.n_cells());
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) x.coeffs()[i] = std::sin(0.3 * static_cast<double>(i));
  std::vector<std::uint8_t> active(g.n_cells(), 0);
  for (std::size_t c = 0; c < active.size(); c += 2) active[c] = 1;
  DGField out(GetParam(), g.n_cells());
  op.apply(x, out, active);
  const DGField full = op.apply(x);
  for (std::size_t c = 0; c < g.n_cells(); ++c) {
    if (active[c])
      EXPECT_LT((out.cell(c) - full.cell(c)).norm(), 1e-15);
    else
      EXPECT_EQ(out.cell(c).norm(), 0.0);
  }
}

TEST_P(DgOrder, L2ErrorOfProjection) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(-1, 1, -1, 1, 4, 4));
  const BasisSet b(GetParam());
  const auto fn = [](const Vec2& x) { return State4(1, 2.0 * x.x(), 0, 3.0 - x.y()); };
  const DGField q = project_initial_condition(fn, g, b);
  if (GetParam() >= 1) {
    EXPECT_LT(l2_error(q, g, b, fn), 1e-12);
    EXPECT_LT(l2_error(q, g, b, [](const Vec2& x) { return 3.0 - x.y(); }, kP), 1e-12);
  }
  const auto two = [](const Vec2&) { return State4(0, 0, 0, 2); };
  EXPECT_NEAR(l2_error(project_initial_condition(two, g, b), g, b, [](const Vec2&) { return 1.0; }, kP), 1.0,
              1e-13);
  EXPECT_THROW(l2_error(q, g, b, [](const Vec2&) { return 0.0; }, kV), Error);
}

INSTANTIATE_TEST_SUITE_P(Orders, DgOrder, ::testing::Values(0, 1, 2));

TEST(Dg, LinearDataReproducedAtOrderOne) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(0, 1, 0, 1, 3, 3));
  const BasisSet b(1);
  const auto fn = [](const Vec2& x) { return State4(x.x() - 2 * x.y(), 1, 0.5 * x.y(), 3 * x.x()); };
  const DGField q = project_initial_condition(fn, g, b);
  for (std::size_t c = 0; c < g.n_cells(); ++c)
    for (const Vec2& xi : b.volume_rule().points)
      EXPECT_LT((evaluate(q, b, c, xi) - fn(g.to_physical(static_cast<int>(c), xi))).norm(), 1e-12);
  EXPECT_LT((evaluate_at(q, g, b, 4, g.cell_centroid[4]) - fn(g.cell_centroid[4])).norm(), 1e-12);
}

TEST(Dg, PressureGradientDrivesVelocity) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(-1, 1, -1, 1, 6, 6));
  const BasisSet b(1);
  const FluxMatrices fm = mean_flux_matrices({0.0, 0.0});
  const DGField q = project_initial_condition([](const Vec2& x) { return State4(0, 0, 0, 0.5 + 2.0 * x.x()); }, g, b);
  const DGField out = spatial_operator(q, g, b, fm, 1.0);
  for (std::size_t c = 0; c < g.n_cells(); ++c) {
    if (touches_boundary(g, c)) continue;
    EXPECT_LT((out.mean(c) - State4(0, -2, 0, 0)).norm(), 1e-12);
    EXPECT_LT(out.cell(c).bottomRows(2).norm(), 1e-12);
  }
}

TEST(Dg, OrderZeroMatchesHandAssembly) {
  std::istringstream in("nodes 4\n0 0\n2 0\n2 1\n0 1\ntriangles 2\n0 1 2\n0 2 3\n"
                        "boundary 4\n0 1 wall\n1 2 nonreflective\n2 3 free\n3 0 wall\n");
  const GeometryCache g = compute_geometry(parse_mesh(in));
  const BasisSet b(0);
  const FluxMatrices fm = mean_flux_matrices({0.5, 0.0});
  const double alpha = 1.5;
  DGField q(0, 2);
  q.cell(0).row(0) << 0.1, 0.4, -0.3, 0.2;
  q.cell(1).row(0) << -0.5, 0.2, 0.6, 1.0;
  const DGField out = spatial_operator(q, g, b, fm, alpha);
  for (int i = 0; i < 2; ++i) {
    State4 sum = State4::Zero();
    for (int f : g.cell_faces[static_cast<std::size_t>(i)]) {
      const Face& face = g.faces[static_cast<std::size_t>(f)];
      const Vec2 n = g.outward_normal(f, i);
      const State4 qi = q.mean(static_cast<std::size_t>(i));
      State4 qj;
      if (!face.is_boundary())
        qj = q.mean(static_cast<std::size_t>(face.owner == i ? face.neighbor : face.owner));
      else if (face.tag == BoundaryTag::wall)
        qj = apply_wall_bc(qi, n);
      else
        qj = apply_nonreflective_bc(qi, n, fm);
      sum += face.length * lax_friedrichs_flux(qi, qj, n, fm, alpha);
    }
    const State4 expect = -sum / g.cell_area[static_cast<std::size_t>(i)];
    EXPECT_LT((out.mean(static_cast<std::size_t>(i)) - expect).norm(), 1e-14);
  }
}

TEST(Dg, GaussianCellIntegralsMatchRefinedQuadrature) {
  const GeometryCache g = compute_geometry(make_rectangle_mesh(-2, 2, -2, 2, 8, 8));
  const PulseParams pp{1.0, 1e-5, 0.5};
  const auto pressure = [&](const Vec2& x) { return gaussian_pulse_state(x, pp)[kP]; };
  for (int order : {0, 2}) {
    const BasisSet b(order);
    const DGField q = project_initial_condition([&](const Vec2& x) { return gaussian_pulse_state(x, pp); }, g, b);
    for (int c : {0, 37, 64, 127}) {
      const double ref = refined_cell_integral(g, c, pressure, 3);
      EXPECT_NEAR(q.mean(static_cast<std::size_t>(c))[kP] * g.cell_area[static_cast<std::size_t>(c)], ref,
                  1e-10 * std::abs(ref));
    }
  }
}

TEST(Dg, CellL2Norm) {
  DGField q(1, 1);
  q.cell(0).row(0) << 1, 0, 0, 0;
  q.cell(0).row(2) << 0, 2, 0, 0;
  EXPECT_DOUBLE_EQ(cell_l2_norm(q, 0, 0.25), std::sqrt(0.25 * 5.0));
}
