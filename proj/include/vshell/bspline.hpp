#pragma once

#include <vector>

#include <Eigen/Dense>

namespace vshell {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
GaussRule gauss_legendre(int n);

/// Open uniform B-spline basis on [lo, hi] with n_elems knot spans, given
/// degree and inter-element continuity (0 <= continuity < degree).
class BSplineBasis1D {
 public:
  BSplineBasis1D() = default;
  BSplineBasis1D(double lo, double hi, int n_elems, int degree, int continuity);

  int size() const { return size_; }
  int degree() const { return p_; }
  int continuity() const { return k_; }
  int n_elems() const { return n_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double breakpoint(int e) const;
  int element_of(double x) const;
  const std::vector<double>& knots() const { return knots_; }

  /// Values and derivatives up to order nder of the degree+1 functions that
  /// are nonzero on element e, evaluated at x. ders(d, j) is the d-th
  /// derivative of function first + j; returns first.
  int eval(int e, double x, int nder, Eigen::MatrixXd& ders) const;

 private:
  double lo_ = 0.0, hi_ = 1.0;
  int n_ = 1, p_ = 1, k_ = 0, mult_ = 1, size_ = 2;
  std::vector<double> knots_;
};

}  // namespace vshell
