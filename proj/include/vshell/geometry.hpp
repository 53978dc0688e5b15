#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vshell/chart.hpp"

namespace vshell {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Geometric package of the middle surface at one parameter point.
///
/// Index conventions (0-based):
///   a_lo(a,b) = a_{ab},  a_up(a,b) = a^{ab}
///   b_lo(a,b) = b_{ab},  b_mix(s,a) = b^s_a
///   christoffel[s](a,b) = Gamma^s_{ab}
///   db_mix[c](s,a) = d_c b^s_a
///   b_cov[a](s,b) = b^s_b|_a
struct SurfaceFrame {
  Vec2 y = Vec2::Zero();
  Vec3 x = Vec3::Zero();
  std::array<Vec3, 2> a_cov{};
  std::array<Vec3, 2> a_con{};
  Vec3 a3 = Vec3::Zero();
  Mat2 a_lo = Mat2::Zero();
  Mat2 a_up = Mat2::Zero();
  Mat2 b_lo = Mat2::Zero();
  Mat2 b_mix = Mat2::Zero();
  std::array<Mat2, 2> christoffel{};
  std::array<Mat2, 2> db_mix{};
  std::array<Mat2, 2> b_cov{};
  double det_a = 0.0;
  double sqrt_a = 0.0;
  ChartJet jet;
};

/// Evaluates the surface frame, including the derivatives of the mixed
/// curvature. Throws DegenerateChart if |a_1 ^ a_2| <= 1e-10.
SurfaceFrame eval_frame(const Chart& chart, const Vec2& y);

/// b^s_b|_a as returned in SurfaceFrame::b_cov.
std::array<Mat2, 2> curvature_covariant_derivative(const Chart& chart, const Vec2& y);

/// Scaled three-dimensional metric quantities at (y, x3) for half-thickness
/// eps, evaluated at the physical point x3e = eps * x3.
///
///   g_cov[i] = g_i, g_con[i] = g^i, g_lo(i,j) = g_{ij}, g_up(i,j) = g^{ij}
///   christoffel[p](i,j) = Gamma^p_{ij}(eps)
struct Metrics3D {
  Vec2 y = Vec2::Zero();
  double x3 = 0.0;
  double eps = 0.0;
  std::array<Vec3, 3> g_cov{};
  std::array<Vec3, 3> g_con{};
  Mat3 g_lo = Mat3::Zero();
  Mat3 g_up = Mat3::Zero();
  std::array<Mat3, 3> christoffel{};
  double det_g = 0.0;     // g(eps)
  double sqrt_g = 0.0;
  double triple = 0.0;    // det(g_1, g_2, g_3)
};

/// Throws ThicknessTooLarge if det(g_1, g_2, g_3) <= 0.
Metrics3D eval_metrics3d(const Chart& chart, const Vec2& y, double x3, double eps);
Metrics3D eval_metrics3d(const SurfaceFrame& frame, double x3, double eps);

/// Largest eps in {1, 1/2, 1/4, ...} keeping det(g_1,g_2,g_3) > 0 on the
/// lattice for x3 in [-1, 1].
double find_eps0(const Chart& chart, int lattice = 16, int max_halvings = 30);

struct ExpansionRecord {
  std::string quantity;
  double expected_order = 0.0;
  std::vector<double> eps;
  std::vector<double> deviation;  // sup over the sample set
  double slope = 0.0;             // log-log regression slope
  bool exact = false;             // all deviations at roundoff level
  bool pass = false;
};

struct ExpansionReport {
  std::vector<ExpansionRecord> records;
  double slope_tolerance = 0.2;
  bool all_pass() const;
};

/// Measures the convergence orders of g(eps), Gamma^s_{ab}(eps),
/// Gamma^3_{ab}(eps) and Gamma^s_{a3}(eps) against their surface limits.
/// The sample set is the lattice crossed with the given x3 values.
ExpansionReport verify_expansions(const Chart& chart, int lattice, const std::vector<double>& eps_list,
                                  const std::vector<double>& x3_values = {-0.75, 0.5, 1.0});

/// Least-squares slope of log(values) against log(eps).
double loglog_slope(const std::vector<double>& eps, const std::vector<double>& values);

}  // namespace vshell
