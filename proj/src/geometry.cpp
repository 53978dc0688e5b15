#include "vshell/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vshell/errors.hpp"

namespace vshell {

namespace {

constexpr double kDegenerateThreshold = 1e-10;
constexpr double kExactThreshold = 1e-13;

}  // namespace

SurfaceFrame eval_frame(const Chart& chart, const Vec2& y) {
  SurfaceFrame f;
  f.y = y;
  f.jet = chart.eval(y);
  const ChartJet& j = f.jet;
  f.x = j.x;
  f.a_cov = j.d1;
  const Vec3 cross = j.d1[0].cross(j.d1[1]);
  const double cn = cross.norm();
  if (!(cn > kDegenerateThreshold)) {
    throw Error(ErrorKind::DegenerateChart, "tangent vectors are linearly dependent");
  }
  f.a3 = cross / cn;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.a_lo(a, b) = f.a_cov[a].dot(f.a_cov[b]);
  f.det_a = f.a_lo.determinant();
  f.sqrt_a = std::sqrt(f.det_a);
  f.a_up = f.a_lo.inverse();
  for (int a = 0; a < 2; ++a) f.a_con[a] = f.a_up(a, 0) * f.a_cov[0] + f.a_up(a, 1) * f.a_cov[1];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.b_lo(a, b) = f.a3.dot(j.second(a, b));
  f.b_mix = f.a_up * f.b_lo;
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) f.christoffel[s](a, b) = f.a_con[s].dot(j.second(a, b));

  // Derivatives of the mixed curvature through the Weingarten relation.
  std::array<Vec3, 2> da3;
  for (int b = 0; b < 2; ++b) da3[b] = -(f.b_mix(0, b) * f.a_cov[0] + f.b_mix(1, b) * f.a_cov[1]);
  for (int c = 0; c < 2; ++c) {
    Mat2 da, db;
    for (int m = 0; m < 2; ++m) {
      for (int n = 0; n < 2; ++n) {
        da(m, n) = j.second(m, c).dot(f.a_cov[n]) + f.a_cov[m].dot(j.second(n, c));
        db(m, n) = da3[c].dot(j.second(m, n)) + f.a3.dot(j.third(m, n, c));
      }
    }
    const Mat2 daup = -f.a_up * da * f.a_up;
    f.db_mix[c] = daup * f.b_lo + f.a_up * db;
  }
  for (int a = 0; a < 2; ++a) {
    for (int s = 0; s < 2; ++s) {
      for (int b = 0; b < 2; ++b) {
        double v = f.db_mix[a](s, b);
        for (int t = 0; t < 2; ++t) {
          v += f.christoffel[s](a, t) * f.b_mix(t, b) - f.christoffel[t](a, b) * f.b_mix(s, t);
        }
        f.b_cov[a](s, b) = v;
      }
    }
  }
  return f;
}

std::array<Mat2, 2> curvature_covariant_derivative(const Chart& chart, const Vec2& y) {
  return eval_frame(chart, y).b_cov;
}

Metrics3D eval_metrics3d(const SurfaceFrame& f, double x3, double eps) {
  Metrics3D m;
  m.y = f.y;
  m.x3 = x3;
  m.eps = eps;
  const double z = eps * x3;
  const ChartJet& j = f.jet;

  for (int a = 0; a < 2; ++a) {
    m.g_cov[a] = f.a_cov[a] - z * (f.b_mix(0, a) * f.a_cov[0] + f.b_mix(1, a) * f.a_cov[1]);
  }
  m.g_cov[2] = f.a3;
  m.triple = m.g_cov[0].cross(m.g_cov[1]).dot(f.a3);
  if (!(m.triple > 0.0)) {
    throw Error(ErrorKind::ThicknessTooLarge, "det(g1,g2,g3) <= 0; reduce eps");
  }
  Mat2 gt, gti;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) gt(a, b) = m.g_cov[a].dot(m.g_cov[b]);
  gti = gt.inverse();
  for (int a = 0; a < 2; ++a) m.g_con[a] = gti(a, 0) * m.g_cov[0] + gti(a, 1) * m.g_cov[1];
  m.g_con[2] = f.a3;
  m.g_lo.setZero();
  m.g_up.setZero();
  m.g_lo.topLeftCorner<2, 2>() = gt;
  m.g_up.topLeftCorner<2, 2>() = gti;
  m.g_lo(2, 2) = 1.0;
  m.g_up(2, 2) = 1.0;
  m.det_g = gt.determinant();
  m.sqrt_g = m.triple;

  // d_a a3 and d_b d_a a3.
  std::array<Vec3, 2> da3;
  for (int a = 0; a < 2; ++a) da3[a] = -(f.b_mix(0, a) * f.a_cov[0] + f.b_mix(1, a) * f.a_cov[1]);
  Vec3 dg[3][3];  // dg[i][j] = d_j g_i
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Vec3 dda3 = Vec3::Zero();
      for (int s = 0; s < 2; ++s) {
        dda3 -= f.db_mix[b](s, a) * f.a_cov[s] + f.b_mix(s, a) * j.second(s, b);
      }
      dg[a][b] = j.second(a, b) + z * dda3;
    }
    dg[a][2] = da3[a];
    dg[2][a] = da3[a];
  }
  for (int p = 0; p < 3; ++p) {
    m.christoffel[p].setZero();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) m.christoffel[p](a, b) = m.g_con[p].dot(dg[a][b]);
    }
  }
  for (int s = 0; s < 2; ++s) {
    for (int a = 0; a < 2; ++a) {
      const double v = m.g_con[s].dot(da3[a]);
      m.christoffel[s](a, 2) = v;
      m.christoffel[s](2, a) = v;
    }
  }
  return m;
}

Metrics3D eval_metrics3d(const Chart& chart, const Vec2& y, double x3, double eps) {
  return eval_metrics3d(eval_frame(chart, y), x3, eps);
}

double find_eps0(const Chart& chart, int lattice, int max_halvings) {
  const auto pts = sample_lattice(chart.domain(), lattice);
  std::vector<SurfaceFrame> frames;
  frames.reserve(pts.size());
  for (const auto& y : pts) frames.push_back(eval_frame(chart, y));
  const double x3s[] = {-1.0, -0.5, 0.5, 1.0};
  double eps = 1.0;
  for (int it = 0; it <= max_halvings; ++it, eps *= 0.5) {
    bool ok = true;
    for (const auto& f : frames) {
      for (double x3 : x3s) {
        const double z = eps * x3;
        const Mat2 m = Mat2::Identity() - z * f.b_mix;
        if (!(m.determinant() * f.sqrt_a > 0.0)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return eps;
  }
  throw Error(ErrorKind::ThicknessTooLarge, "no admissible eps found");
}

double loglog_slope(const std::vector<double>& eps, const std::vector<double>& values) {
  const std::size_t n = std::min(eps.size(), values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0)) continue;
    ++used;
    const double x = std::log(eps[i]), y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(used);
  const double d = m * sxx - sx * sx;
  return used < 2 ? 0.0 : (m * sxy - sx * sy) / d;
}

bool ExpansionReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
}

ExpansionReport verify_expansions(const Chart& chart, int lattice, const std::vector<double>& eps_list,
                                  const std::vector<double>& x3_values) {
  const auto pts = sample_lattice(chart.domain(), lattice);
  std::vector<SurfaceFrame> frames;
  frames.reserve(pts.size());
  for (const auto& y : pts) frames.push_back(eval_frame(chart, y));

  ExpansionReport report;
  report.records = {
      {"g(eps) - a", 1.0, {}, {}, 0.0, false, false},
      {"Gamma^s_ab(eps) - Gamma^s_ab + eps x3 b^s_b|a", 2.0, {}, {}, 0.0, false, false},
      {"Gamma^3_ab(eps) - b_ab", 1.0, {}, {}, 0.0, false, false},
      {"Gamma^s_a3(eps) + b^s_a + eps x3 b^t_a b^s_t", 2.0, {}, {}, 0.0, false, false},
  };
  for (double eps : eps_list) {
    double dev[4] = {0, 0, 0, 0};
    for (const auto& f : frames) {
      const Mat2 bb = f.b_mix * f.b_mix;
      for (double x3 : x3_values) {
        const Metrics3D m = eval_metrics3d(f, x3, eps);
        const double z = eps * x3;
        dev[0] = std::max(dev[0], std::abs(m.det_g - f.det_a));
        for (int s = 0; s < 2; ++s) {
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              dev[1] = std::max(dev[1], std::abs(m.christoffel[s](a, b) - f.christoffel[s](a, b) +
                                                 z * f.b_cov[a](s, b)));
            }
            dev[3] = std::max(dev[3], std::abs(m.christoffel[s](a, 2) + f.b_mix(s, a) + z * bb(s, a)));
          }
        }
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            dev[2] = std::max(dev[2], std::abs(m.christoffel[2](a, b) - f.b_lo(a, b)));
      }
    }
    for (int q = 0; q < 4; ++q) {
      report.records[q].eps.push_back(eps);
      report.records[q].deviation.push_back(dev[q]);
    }
  }
  for (auto& r : report.records) {
    const double mx = *std::max_element(r.deviation.begin(), r.deviation.end());
    r.exact = mx <= kExactThreshold;
    r.slope = r.exact ? r.expected_order : loglog_slope(r.eps, r.deviation);
    r.pass = r.exact || std::abs(r.slope - r.expected_order) <= report.slope_tolerance;
  }
  return report;
}

}  // namespace vshell
