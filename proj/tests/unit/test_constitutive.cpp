#include <cmath>

#include <gtest/gtest.h>

#include "vshell/chart.hpp"
#include "vshell/constitutive.hpp"
#include "vshell/errors.hpp"
#include "vshell/geometry.hpp"

using namespace vshell;

namespace {

double kron(int i, int j) { return i == j ? 1.0 : 0.0; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IoError;
}

}  // namespace

TEST(Constitutive, MemoryConstants) {
  MemoryConstants c = memory_constants({1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(c.k, 1.5);
  EXPECT_DOUBLE_EQ(c.Lambda, -0.5);
  c = memory_constants({0, 1, 2, 0});
  EXPECT_DOUBLE_EQ(c.k, 1.0);
  EXPECT_DOUBLE_EQ(c.Lambda, -1.0);
  EXPECT_DOUBLE_EQ(c.theta_Lambda, -2.0);
  EXPECT_DOUBLE_EQ(memory_constants({2, 1, 1, 1}).theta_Lambda, 0.0);
  EXPECT_EQ(kind_of([] { memory_constants({1, 1, 0, 1}); }), ErrorKind::ZeroViscosity);
  EXPECT_EQ(kind_of([] { tensor2d(Tensor2DKind::b, {1, 1, 0, 0}, Mat2::Identity()); }), ErrorKind::ZeroViscosity);
  EXPECT_EQ(kind_of([] { validate(MaterialParams{1, 0, 1, 1}); }), ErrorKind::ConfigError);
}

TEST(Constitutive, TimeRescaling) {
  const MaterialParams m{1.3, 0.7, 0.4, 1.1};
  const double s = 2.5;
  const MemoryConstants a = memory_constants(m), b = memory_constants({m.lambda, m.mu, s * m.theta, s * m.rho});
  EXPECT_NEAR(b.k, a.k / s, 1e-15);
  EXPECT_NEAR(b.Lambda, a.Lambda / s, 1e-15);
  const Tensor2D ca = tensor2d(Tensor2DKind::c, m, Mat2::Identity());
  const Tensor2D cb = tensor2d(Tensor2DKind::c, {m.lambda, m.mu, s * m.theta, s * m.rho}, Mat2::Identity());
  EXPECT_NEAR(cb(0, 0, 0, 0), ca(0, 0, 0, 0) / s, 1e-14);
}

TEST(Constitutive, FlatPlateTensorValues) {
  const Mat2 I = Mat2::Identity();
  // a = (2 lambda rho^2 + 4 mu theta^2)/(theta+rho)^2 dd + 2 mu (dd + dd)
  const Tensor2D a = tensor2d(Tensor2DKind::a, {0, 1, 1, 1}, I);
  EXPECT_DOUBLE_EQ(a(0, 0, 0, 0), 1.0 + 4.0);
  EXPECT_DOUBLE_EQ(a(0, 0, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(a(0, 1, 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(min_voigt_eigenvalue(a), 2.0);
  const Tensor2D b = tensor2d(Tensor2DKind::b, {0, 1, 1, 1}, I);
  EXPECT_DOUBLE_EQ(b(0, 0, 0, 0), 3.0);
  EXPECT_DOUBLE_EQ(b(0, 1, 0, 1), 1.0);
  const Tensor2D c = tensor2d(Tensor2DKind::c, {2, 1, 1, 1}, I);
  EXPECT_EQ(max_abs(c), 0.0);
  EXPECT_EQ(min_voigt_eigenvalue(c), 0.0);
  const Tensor2D el = elastic_equivalent_tensor({1, 1, 0.3, 2.0}, eval_frame(FlatChart{}, Vec2(0.5, 0.5)));
  EXPECT_NEAR(el(0, 0, 0, 0), 16.0 / 3.0, 1e-14);
  EXPECT_NEAR(el(0, 0, 1, 1), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(elastic_equivalent_tensor({0, 1, 1, 1}, eval_frame(FlatChart{}, Vec2(0.5, 0.5)))(0, 0, 1, 1), 0.0, 1e-15);
}

TEST(Constitutive, Symmetries) {
  const SurfaceFrame f = eval_frame(ParaboloidChart(1.0, Rectangle{-0.5, 0.5, -0.5, 0.5}), Vec2(0.3, 0.2));
  const MaterialParams m{1.7, 0.6, 0.9, 0.4};
  for (auto k : {Tensor2DKind::a, Tensor2DKind::b, Tensor2DKind::c}) EXPECT_LT(symmetry_defect(tensor2d(k, m, f)), 1e-14);
  const Metrics3D g = eval_metrics3d(f, 0.6, 0.1);
  for (auto k : {Tensor3DKind::A, Tensor3DKind::B}) {
    const Tensor3D t = tensor3d(k, m, g);
    EXPECT_LT(symmetry_defect(t), 1e-14);
    // Zero components A^{ab s3} and A^{a333}.
    for (int a = 0; a < 2; ++a) {
      EXPECT_EQ(t(a, 2, 2, 2), 0.0);
      for (int b = 0; b < 2; ++b)
        for (int s = 0; s < 2; ++s) EXPECT_EQ(t(a, b, s, 2), 0.0);
    }
  }
}

TEST(Constitutive, IdentityMetricGivesCartesianTensor) {
  const Metrics3D g = eval_metrics3d(FlatChart{}, Vec2(0.2, 0.8), 0.3, 0.5);
  const MaterialParams m{1.5, 0.8, 1, 1};
  const Tensor3D A = tensor3d(Tensor3DKind::A, m, g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          EXPECT_NEAR(A(i, j, k, l),
                      m.lambda * kron(i, j) * kron(k, l) + m.mu * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k)),
                      1e-15);
}

TEST(Constitutive, LimitTensor) {
  const SurfaceFrame f = eval_frame(CylinderChart(1.0, Rectangle{}), Vec2(0.3, 0.2));
  const MaterialParams m{1.2, 0.7, 1, 1};
  const Tensor3D A0 = tensor3d_limit(Tensor3DKind::A, m, f);
  for (int a = 0; a < 2; ++a)
    for (int s = 0; s < 2; ++s) EXPECT_NEAR(A0(a, 2, s, 2), m.mu * f.a_up(a, s), 1e-15);
  EXPECT_NEAR(A0(2, 2, 2, 2), m.lambda + 2 * m.mu, 1e-15);
  std::vector<double> eps{1e-1, 1e-2, 1e-3}, dev;
  for (double e : eps) dev.push_back(max_abs_diff(tensor3d(Tensor3DKind::A, m, eval_metrics3d(f, 0.8, e)), A0));
  EXPECT_GE(loglog_slope(eps, dev), 0.9);
}

TEST(Constitutive, VoigtQuadraticForm) {
  const Tensor2D a = tensor2d(Tensor2DKind::a, {1.1, 0.9, 0.5, 1.5}, (Mat2() << 2.0, 0.3, 0.3, 1.2).finished());
  Mat2 t;
  t << 0.4, -0.7, -0.7, 1.3;
  double q = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) q += a(i, j, k, l) * t(k, l) * t(i, j);
  const Eigen::Vector3d e(t(0, 0), t(1, 1), 2 * t(0, 1));
  EXPECT_NEAR(e.dot(voigt(a) * e), q, 1e-12);
}
