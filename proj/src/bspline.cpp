#include "vshell/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vshell/errors.hpp"

namespace vshell {

GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

BSplineBasis1D::BSplineBasis1D(double lo, double hi, int n_elems, int degree, int continuity)
    : lo_(lo), hi_(hi), n_(n_elems), p_(degree), k_(continuity) {
  if (n_elems < 1 || degree < 1 || continuity < 0 || continuity >= degree || !(hi > lo)) {
    throw Error(ErrorKind::ConfigError, "invalid B-spline basis parameters");
  }
  mult_ = p_ - k_;
  knots_.assign(p_ + 1, lo_);
  for (int e = 1; e < n_; ++e) knots_.insert(knots_.end(), mult_, breakpoint(e));
  knots_.insert(knots_.end(), p_ + 1, hi_);
  size_ = static_cast<int>(knots_.size()) - p_ - 1;
}

double BSplineBasis1D::breakpoint(int e) const {
  if (e <= 0) return lo_;
  if (e >= n_) return hi_;
  return lo_ + (hi_ - lo_) * e / n_;
}

int BSplineBasis1D::element_of(double x) const {
  const int e = static_cast<int>(std::floor((x - lo_) / (hi_ - lo_) * n_));
  return std::clamp(e, 0, n_ - 1);
}

int BSplineBasis1D::eval(int e, double u, int nder, Eigen::MatrixXd& ders) const {
  const int p = p_;
  const int span = p + mult_ * e;
  const auto& U = knots_;
  Eigen::MatrixXd ndu(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - U[span + 1 - j];
    right[j] = U[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }
  ders.setZero(nder + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);
  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= std::min(nder, p); ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double f = p;
  for (int k = 1; k <= std::min(nder, p); ++k) {
    for (int j = 0; j <= p; ++j) ders(k, j) *= f;
    f *= (p - k);
  }
  return span - p;
}

}  // namespace vshell
