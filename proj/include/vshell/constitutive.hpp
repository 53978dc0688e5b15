#pragma once

#include <array>

#include <Eigen/Dense>

#include "vshell/geometry.hpp"

namespace vshell {

/// Lame coefficients (lambda, mu) and viscosity coefficients (theta, rho).
struct MaterialParams {
  double lambda = 1.0;
  double mu = 1.0;
  double theta = 1.0;
  double rho = 1.0;

  bool operator==(const MaterialParams&) const = default;
};

/// Throws ConfigError unless mu > 0 and lambda, theta, rho >= 0.
void validate(const MaterialParams& m);

struct MemoryConstants {
  double Lambda = 0.0;        // lambda/theta - (lambda+2mu)/(theta+rho)
  double k = 0.0;             // (lambda+2mu)/(theta+rho)
  double theta_Lambda = 0.0;  // (lambda rho - 2 mu theta)/(theta+rho)
};

/// Throws ZeroViscosity if theta == 0.
MemoryConstants memory_constants(const MaterialParams& m);

/// Contravariant components T^{abst}, stored row-major in (a,b,s,t).
struct Tensor2D {
  std::array<double, 16> c{};
  double& operator()(int a, int b, int s, int t) { return c[((a * 2 + b) * 2 + s) * 2 + t]; }
  double operator()(int a, int b, int s, int t) const { return c[((a * 2 + b) * 2 + s) * 2 + t]; }
};

/// Contravariant components T^{ijkl}, stored row-major in (i,j,k,l).
struct Tensor3D {
  std::array<double, 81> c{};
  double& operator()(int i, int j, int k, int l) { return c[((i * 3 + j) * 3 + k) * 3 + l]; }
  double operator()(int i, int j, int k, int l) const { return c[((i * 3 + j) * 3 + k) * 3 + l]; }
};

enum class Tensor2DKind { a, b, c };
enum class Tensor3DKind { A, B };

/// Tensor of the form alpha * m^{ab} m^{st} + beta * (m^{as} m^{bt} + m^{at} m^{bs}).
Tensor2D isotropic2d(const Mat2& m_up, double alpha, double beta);
Tensor3D isotropic3d(const Mat3& g_up, double alpha, double beta);

/// The two-dimensional membrane/flexural tensors a, b, c built on a^{ab}.
/// Throws ZeroViscosity if theta + rho == 0.
Tensor2D tensor2d(Tensor2DKind kind, const MaterialParams& m, const Mat2& a_up);
Tensor2D tensor2d(Tensor2DKind kind, const MaterialParams& m, const SurfaceFrame& frame);

/// Coefficient pair (alpha, beta) of tensor2d in the isotropic form above.
std::array<double, 2> tensor2d_coefficients(Tensor2DKind kind, const MaterialParams& m);

/// A^{ijkl}(eps) or B^{ijkl}(eps) built on g^{ij}(eps).
Tensor3D tensor3d(Tensor3DKind kind, const MaterialParams& m, const Metrics3D& g);

/// eps -> 0 limit of tensor3d, built on g^{ij}(0) = diag(a^{ab}, 1).
Tensor3D tensor3d_limit(Tensor3DKind kind, const MaterialParams& m, const SurfaceFrame& frame);

/// a - c/k. Throws ZeroViscosity if theta == 0.
Tensor2D elastic_equivalent_tensor(const MaterialParams& m, const SurfaceFrame& frame);

/// Symmetric-matrix (Voigt) representation.
///
/// Rows and columns follow the index pairs (11,22,12) in 2D and
/// (11,22,33,23,13,12) in 3D. Entries are the raw components, V(I,J) = T^{IJ},
/// so the quadratic form T^{ijkl} t_kl t_ij equals e^T V e with the engineering
/// vector e = (t11, t22, 2 t12) in 2D and (t11, t22, t33, 2 t23, 2 t13, 2 t12)
/// in 3D. V is congruent to the form on symmetric matrices, so its definiteness
/// is that of the tensor.
Eigen::Matrix3d voigt(const Tensor2D& t);
Eigen::Matrix<double, 6, 6> voigt(const Tensor3D& t);

/// Smallest eigenvalue of the Voigt matrix.
double min_voigt_eigenvalue(const Tensor2D& t);
double min_voigt_eigenvalue(const Tensor3D& t);

/// Largest |T^{ijkl} - T^{jikl}|, |T^{ijkl} - T^{ijlk}|, |T^{ijkl} - T^{klij}|.
double symmetry_defect(const Tensor2D& t);
double symmetry_defect(const Tensor3D& t);

double max_abs(const Tensor2D& t);
double max_abs(const Tensor3D& t);
double max_abs_diff(const Tensor2D& x, const Tensor2D& y);
double max_abs_diff(const Tensor3D& x, const Tensor3D& y);

}  // namespace vshell
