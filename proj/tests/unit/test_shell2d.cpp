#include <cmath>

#include <gtest/gtest.h>

#include "vshell/bench_cases.hpp"
#include "vshell/errors.hpp"
#include "vshell/shell2d.hpp"
#include "vshell/verify.hpp"

using namespace vshell;

namespace {

// eta_i(y) = polynomial test field with analytic derivatives.
DisplacementJet test_field(const Vec2& y) {
  const double x = y[0], z = y[1];
  DisplacementJet j;
  j.v = Vec3(x * x * z, std::sin(x) + z * z, x * z * z + 0.3 * x);
  j.d1 << 2 * x * z, x * x, std::cos(x), 2 * z, z * z + 0.3, 2 * x * z;
  j.d2[0] << 2 * z, 2 * x, 2 * x, 0.0;
  j.d2[1] << -std::sin(x), 0.0, 0.0, 2.0;
  j.d2[2] << 0.0, 2 * z, 2 * z, 2 * x;
  return j;
}

// Displacement vector U = eta_i a^i in space.
Vec3 displacement(const Chart& c, const Vec2& y) {
  const SurfaceFrame f = eval_frame(c, y);
  const DisplacementJet j = test_field(y);
  return j.v[0] * f.a_con[0] + j.v[1] * f.a_con[1] + j.v[2] * f.a3;
}

Vec2 unit(int a) { return a == 0 ? Vec2(1, 0) : Vec2(0, 1); }

double surface_area(const Chart& c) {
  const GaussRule g = gauss_legendre(12);
  const Rectangle r = c.domain();
  double s = 0.0;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const Vec2 y(r.lo1 + 0.5 * (g.x[i] + 1) * r.length(0), r.lo2 + 0.5 * (g.x[j] + 1) * r.length(1));
      const ChartJet jt = c.eval(y);
      s += g.w[i] * g.w[j] * jt.d1[0].cross(jt.d1[1]).norm();
    }
  return s * r.length(0) * r.length(1) / 4.0;
}

}  // namespace

TEST(Shell2D, StrainsMatchSpatialDisplacement) {
  for (const ChartPtr& chart : {ChartPtr(std::make_shared<CylinderChart>(1.3, Rectangle{})),
                                ChartPtr(std::make_shared<ParaboloidChart>(0.8, Rectangle{-0.5, 0.5, -0.5, 0.5}))}) {
    const Vec2 y(0.21, 0.37);
    const SurfaceFrame f = eval_frame(*chart, y);
    const double h = 1e-4;
    std::array<Vec3, 2> dU;
    std::array<std::array<Vec3, 2>, 2> ddU;
    for (int a = 0; a < 2; ++a) {
      dU[a] = (displacement(*chart, y + h * unit(a)) - displacement(*chart, y - h * unit(a))) / (2 * h);
      for (int b = 0; b < 2; ++b) {
        const Vec2 ea = h * unit(a), eb = h * unit(b);
        ddU[a][b] = (displacement(*chart, y + ea + eb) - displacement(*chart, y + ea - eb) -
                     displacement(*chart, y - ea + eb) + displacement(*chart, y - ea - eb)) /
                    (4 * h * h);
      }
    }
    const Mat2 g = gamma(f, test_field(y));
    const Mat2 r = rho(f, test_field(y));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        EXPECT_NEAR(g(a, b), 0.5 * (f.a_cov[a].dot(dU[b]) + f.a_cov[b].dot(dU[a])), 1e-8);
        Vec3 cov = ddU[a][b];
        for (int s = 0; s < 2; ++s) cov -= f.christoffel[s](a, b) * dU[s];
        EXPECT_NEAR(r(a, b), f.a3.dot(cov), 1e-6);
      }
  }
}

TEST(Shell2D, RigidMotionHasNoStrain) {
  // Infinitesimal rotation about the z axis on the cylinder: U = w x X.
  const CylinderChart c(1.0, Rectangle{});
  const Vec3 w(0.2, -0.4, 0.7), t(0.1, 0.3, -0.2);
  const Vec2 y(0.4, 0.6);
  const SurfaceFrame f = eval_frame(c, y);
  DisplacementJet j;
  // Covariant components eta_i = U . a_i, derivatives by differences.
  auto comps = [&](const Vec2& q) {
    const SurfaceFrame fq = eval_frame(c, q);
    const Vec3 U = w.cross(fq.x) + t;
    return Vec3(U.dot(fq.a_cov[0]), U.dot(fq.a_cov[1]), U.dot(fq.a3));
  };
  const double h = 1e-4;
  j.v = comps(y);
  for (int a = 0; a < 2; ++a) {
    j.d1.col(a) = (comps(y + h * unit(a)) - comps(y - h * unit(a))) / (2 * h);
    for (int b = 0; b < 2; ++b) {
      const Vec3 d = (comps(y + h * unit(a) + h * unit(b)) - comps(y + h * unit(a) - h * unit(b)) -
                      comps(y - h * unit(a) + h * unit(b)) + comps(y - h * unit(a) - h * unit(b))) /
                     (4 * h * h);
      for (int i = 0; i < 3; ++i) j.d2[i](a, b) = d[i];
    }
  }
  EXPECT_LT(gamma(f, j).norm(), 1e-8);
  EXPECT_LT(rho(f, j).norm(), 1e-6);
}

TEST(Shell2D, ClampedTracesVanish) {
  const std::array<ComponentSpace, 3> comps{{{true, 3, 2, true}, {true, 2, 1, true}, {true, 3, 2, true}}};
  const FunctionSpace2D s(Rectangle{}, 4, 3, comps, kEdgeLeft | kEdgeBottom, true);
  Vec c = Vec::LinSpaced(s.ndof(), 0.3, 2.0);
  for (double t : {0.1, 0.55, 0.9}) {
    const DisplacementJet l = s.evaluate(c, Vec2(0.0, t));
    EXPECT_NEAR(l.v.norm(), 0.0, 1e-14);
    EXPECT_NEAR(l.d1(2, 0), 0.0, 1e-12);
    const DisplacementJet b = s.evaluate(c, Vec2(t, 0.0));
    EXPECT_NEAR(b.v.norm(), 0.0, 1e-14);
    EXPECT_NEAR(b.d1(2, 1), 0.0, 1e-12);
    EXPECT_GT(s.evaluate(c, Vec2(1.0, t)).v.norm(), 1e-3);
  }
  const std::vector<Vec2> pts{{0.3, 0.4}, {0.8, 0.1}};
  const Vec v = s.evaluation_operator(pts) * c;
  for (int p = 0; p < 2; ++p) EXPECT_LT((v.segment<3>(3 * p) - s.evaluate(c, pts[p]).v).norm(), 1e-14);
}

TEST(Shell2D, GramAndLoadIntegrateArea) {
  const CaseSpec cap = make_case("elliptic_cap");
  auto space = make_space(cap, ShellModel::membrane, 4, 4);
  // eta_3 is not clamped: all-ones coefficients give eta_3 = 1.
  Vec ones = Vec::Zero(space->ndof());
  for (int d = 0; d < space->ndof(); ++d)
    if (space->dof_component(d) == 2) ones[d] = 1.0;
  const double area = surface_area(*cap.chart);
  const SpMat N = gram_matrix(*cap.chart, *space, {0, 0, 0});
  EXPECT_NEAR(ones.dot(N * ones), area, 1e-8);
  const double eps = 0.1;
  const Vec F = load_resultant(scaled_load(cap.membrane_forces, eps), eps, *cap.chart, *space, 0.0);
  EXPECT_NEAR(ones.dot(F), 2.0 * eps * area, 1e-9);
  ScaledForces faces;
  faces.order = 0;
  faces.h_plus = [](const Vec2&) { return Vec3(0, 0, 1); };
  faces.h_minus = [](const Vec2&) { return Vec3(0, 0, 3); };
  EXPECT_NEAR(resultant_density(scaled_load(faces, eps), eps, Vec2(0, 0), 0.0)[2], 4.0 * eps, 1e-15);
}

TEST(Shell2D, FormsAreSymmetricPositiveAndScale) {
  const CaseSpec cap = make_case("elliptic_cap");
  auto space = make_space(cap, ShellModel::membrane, 4, 4);
  const ShellForms f1 = assemble_forms(ShellModel::membrane, *cap.chart, cap.material, *space, 0.1);
  const ShellForms f2 = assemble_forms(ShellModel::membrane, *cap.chart, cap.material, *space, 0.2);
  EXPECT_LT((f2.a - 2.0 * f1.a).norm(), 1e-12 * f1.a.norm());
  EXPECT_LT((SpMat(f1.a.transpose()) - f1.a).norm(), 1e-13 * f1.a.norm());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(f1.a)};
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  const ShellForms g = assemble_forms(ShellModel::flexural, *cap.chart, cap.material, *space, 0.3);
  const ShellForms g1 = assemble_forms(ShellModel::flexural, *cap.chart, cap.material, *space, 0.1);
  EXPECT_LT((g.b - 27.0 * g1.b).norm(), 1e-11 * g.b.norm());
}

TEST(Shell2D, FlexuralKernel) {
  const CaseSpec cyl = make_case("clamped_cylinder");
  auto space = make_space(cyl, ShellModel::flexural, 4, 4);
  const DiscreteShellSystem sys = assemble(ShellModel::flexural, cyl.chart, cyl.material, space, 0.1);
  ASSERT_TRUE(sys.Z.has_value());
  EXPECT_GT(sys.size(), 0);
  EXPECT_GT(sys.kernel_gap, 1e4);
  const Eigen::MatrixXd GZ = Eigen::MatrixXd(sys.G) * *sys.Z;
  EXPECT_LT(GZ.norm(), 1e-5);
  const Vec r = Vec::Ones(sys.size());
  EXPECT_LT(sys.gamma_norm(r), 1e-5);
  EXPECT_LT((sys.reduce(sys.expand(r)) - Eigen::MatrixXd(sys.Z->transpose() * *sys.Z) * r).norm(), 1e-12);

  // Flat plate: inextensional fields are the transverse ones.
  const CaseSpec flat = make_case("flat_plate");
  auto fs = make_space(flat, ShellModel::flexural, 3, 3);
  const DiscreteShellSystem fsys = assemble(ShellModel::flexural, flat.chart, flat.material, fs, 0.1);
  int n3 = 0;
  for (int d = 0; d < fs->ndof(); ++d) n3 += fs->dof_component(d) == 2;
  EXPECT_EQ(fsys.size(), n3);
}

TEST(Shell2D, EllipticCapHasNoInextensionalField) {
  const CaseSpec cap = make_case("elliptic_cap");
  auto space = std::make_shared<FunctionSpace2D>(cap.chart->domain(), 4, 4, make_case("clamped_cylinder").flexural_space,
                                                 cap.clamped, true);
  try {
    assemble(ShellModel::flexural, cap.chart, cap.material, space, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSpace);
  }
  EXPECT_GT(inextensional_witness(*cap.chart, *space), 0.1);
}

TEST(Shell2D, ModelNames) {
  EXPECT_EQ(shell_model_from_string(to_string(ShellModel::flexural)), ShellModel::flexural);
  EXPECT_THROW(shell_model_from_string("plate"), Error);
}
