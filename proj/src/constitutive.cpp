#include "vshell/constitutive.hpp"

#include <algorithm>
#include <cmath>

#include "vshell/errors.hpp"

namespace vshell {

void validate(const MaterialParams& m) {
  if (!(m.mu > 0.0)) throw Error(ErrorKind::ConfigError, "mu must be positive");
  if (!(m.lambda >= 0.0)) throw Error(ErrorKind::ConfigError, "lambda must be non-negative");
  if (!(m.theta >= 0.0) || !(m.rho >= 0.0)) {
    throw Error(ErrorKind::ConfigError, "viscosity coefficients must be non-negative");
  }
}

MemoryConstants memory_constants(const MaterialParams& m) {
  if (!(m.theta > 0.0)) throw Error(ErrorKind::ZeroViscosity, "memory constants need theta > 0");
  MemoryConstants c;
  const double tr = m.theta + m.rho;
  c.k = (m.lambda + 2.0 * m.mu) / tr;
  c.Lambda = m.lambda / m.theta - c.k;
  c.theta_Lambda = (m.lambda * m.rho - 2.0 * m.mu * m.theta) / tr;
  return c;
}

Tensor2D isotropic2d(const Mat2& g, double alpha, double beta) {
  Tensor2D t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u)
          t(a, b, s, u) = alpha * g(a, b) * g(s, u) + beta * (g(a, s) * g(b, u) + g(a, u) * g(b, s));
  return t;
}

Tensor3D isotropic3d(const Mat3& g, double alpha, double beta) {
  Tensor3D t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t(i, j, k, l) = alpha * g(i, j) * g(k, l) + beta * (g(i, k) * g(j, l) + g(i, l) * g(j, k));
  return t;
}

std::array<double, 2> tensor2d_coefficients(Tensor2DKind kind, const MaterialParams& m) {
  const double tr = m.theta + m.rho;
  if (!(tr > 0.0)) throw Error(ErrorKind::ZeroViscosity, "theta + rho must be positive");
  switch (kind) {
    case Tensor2DKind::a:
      return {(2.0 * m.lambda * m.rho * m.rho + 4.0 * m.mu * m.theta * m.theta) / (tr * tr), 2.0 * m.mu};
    case Tensor2DKind::b:
      return {2.0 * m.theta * m.rho / tr, m.rho};
    case Tensor2DKind::c: {
      const double tl = (m.lambda * m.rho - 2.0 * m.mu * m.theta) / tr;
      return {2.0 * tl * tl / tr, 0.0};
    }
  }
  return {0.0, 0.0};
}

Tensor2D tensor2d(Tensor2DKind kind, const MaterialParams& m, const Mat2& a_up) {
  const auto [alpha, beta] = tensor2d_coefficients(kind, m);
  return isotropic2d(a_up, alpha, beta);
}

Tensor2D tensor2d(Tensor2DKind kind, const MaterialParams& m, const SurfaceFrame& frame) {
  return tensor2d(kind, m, frame.a_up);
}

Tensor3D tensor3d(Tensor3DKind kind, const MaterialParams& m, const Metrics3D& g) {
  return kind == Tensor3DKind::A ? isotropic3d(g.g_up, m.lambda, m.mu)
                                 : isotropic3d(g.g_up, m.theta, 0.5 * m.rho);
}

Tensor3D tensor3d_limit(Tensor3DKind kind, const MaterialParams& m, const SurfaceFrame& frame) {
  Mat3 g = Mat3::Zero();
  g.topLeftCorner<2, 2>() = frame.a_up;
  g(2, 2) = 1.0;
  return kind == Tensor3DKind::A ? isotropic3d(g, m.lambda, m.mu) : isotropic3d(g, m.theta, 0.5 * m.rho);
}

Tensor2D elastic_equivalent_tensor(const MaterialParams& m, const SurfaceFrame& frame) {
  const MemoryConstants mc = memory_constants(m);
  const Tensor2D a = tensor2d(Tensor2DKind::a, m, frame);
  const Tensor2D c = tensor2d(Tensor2DKind::c, m, frame);
  Tensor2D out;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.c[i] - c.c[i] / mc.k;
  return out;
}

namespace {
constexpr int kPairs2[3][2] = {{0, 0}, {1, 1}, {0, 1}};
constexpr int kPairs3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
}  // namespace

Eigen::Matrix3d voigt(const Tensor2D& t) {
  Eigen::Matrix3d v;
  for (int I = 0; I < 3; ++I)
    for (int J = 0; J < 3; ++J) v(I, J) = t(kPairs2[I][0], kPairs2[I][1], kPairs2[J][0], kPairs2[J][1]);
  return v;
}

Eigen::Matrix<double, 6, 6> voigt(const Tensor3D& t) {
  Eigen::Matrix<double, 6, 6> v;
  for (int I = 0; I < 6; ++I)
    for (int J = 0; J < 6; ++J) v(I, J) = t(kPairs3[I][0], kPairs3[I][1], kPairs3[J][0], kPairs3[J][1]);
  return v;
}

double min_voigt_eigenvalue(const Tensor2D& t) {
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(voigt(t), Eigen::EigenvaluesOnly).eigenvalues()[0];
}

double min_voigt_eigenvalue(const Tensor3D& t) {
  using M6 = Eigen::Matrix<double, 6, 6>;
  return Eigen::SelfAdjointEigenSolver<M6>(voigt(t), Eigen::EigenvaluesOnly).eigenvalues()[0];
}

namespace {

template <class T, int N>
double symmetry_defect_impl(const T& t) {
  double d = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          const double v = t(i, j, k, l);
          d = std::max({d, std::abs(v - t(j, i, k, l)), std::abs(v - t(i, j, l, k)), std::abs(v - t(k, l, i, j))});
        }
  return d;
}

template <class T>
double max_abs_impl(const T& t) {
  double m = 0.0;
  for (double v : t.c) m = std::max(m, std::abs(v));
  return m;
}

template <class T>
double max_abs_diff_impl(const T& x, const T& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.c.size(); ++i) m = std::max(m, std::abs(x.c[i] - y.c[i]));
  return m;
}

}  // namespace

double symmetry_defect(const Tensor2D& t) { return symmetry_defect_impl<Tensor2D, 2>(t); }
double symmetry_defect(const Tensor3D& t) { return symmetry_defect_impl<Tensor3D, 3>(t); }
double max_abs(const Tensor2D& t) { return max_abs_impl(t); }
double max_abs(const Tensor3D& t) { return max_abs_impl(t); }
double max_abs_diff(const Tensor2D& x, const Tensor2D& y) { return max_abs_diff_impl(x, y); }
double max_abs_diff(const Tensor3D& x, const Tensor3D& y) { return max_abs_diff_impl(x, y); }

}  // namespace vshell
