#include "vshell/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "vshell/errors.hpp"

namespace vshell {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::ThicknessTooLarge: return "ThicknessTooLarge";
    case ErrorKind::ZeroViscosity: return "ZeroViscosity";
    case ErrorKind::SingularSpace: return "SingularSpace";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::UnknownCase: return "UnknownCase";
    case ErrorKind::UnsupportedProfile: return "UnsupportedProfile";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

std::string edges_to_string(EdgeSet edges) {
  if (edges == kEdgeAll) return "all";
  std::vector<std::string> parts;
  if (edges & kEdgeLeft) parts.push_back("left");
  if (edges & kEdgeRight) parts.push_back("right");
  if (edges & kEdgeBottom) parts.push_back("bottom");
  if (edges & kEdgeTop) parts.push_back("top");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out.empty() ? "none" : out;
}

EdgeSet edges_from_string(const std::string& text) {
  EdgeSet edges = kEdgeNone;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") edges |= kEdgeAll;
    else if (item == "left") edges |= kEdgeLeft;
    else if (item == "right") edges |= kEdgeRight;
    else if (item == "bottom") edges |= kEdgeBottom;
    else if (item == "top") edges |= kEdgeTop;
    else if (item == "none" || item.empty()) {}
    else throw Error(ErrorKind::ConfigError, "unknown edge '" + item + "'");
  }
  return edges;
}

ChartJet FlatChart::eval(const Vec2& y) const {
  ChartJet j;
  j.x = Vec3(y[0], y[1], 0.0);
  j.d1[0] = Vec3::UnitX();
  j.d1[1] = Vec3::UnitY();
  for (auto& v : j.d2) v.setZero();
  for (auto& v : j.d3) v.setZero();
  return j;
}

CylinderChart::CylinderChart(double radius, Rectangle domain) : Chart(domain), radius_(radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::DegenerateChart, "cylinder radius must be positive");
}

ChartJet CylinderChart::eval(const Vec2& y) const {
  const double R = radius_;
  const double s = y[0] / R;
  const double c = std::cos(s), sn = std::sin(s);
  ChartJet j;
  j.x = Vec3(R * c, R * sn, y[1]);
  j.d1[0] = Vec3(-sn, c, 0.0);
  j.d1[1] = Vec3::UnitZ();
  j.d2[0] = Vec3(-c, -sn, 0.0) / R;
  j.d2[1].setZero();
  j.d2[2].setZero();
  j.d3[0] = Vec3(sn, -c, 0.0) / (R * R);
  j.d3[1].setZero();
  j.d3[2].setZero();
  j.d3[3].setZero();
  return j;
}

ParaboloidChart::ParaboloidChart(double curvature, Rectangle domain)
    : Chart(domain), c_(curvature) {}

ChartJet ParaboloidChart::eval(const Vec2& y) const {
  ChartJet j;
  j.x = Vec3(y[0], y[1], c_ * (y[0] * y[0] + y[1] * y[1]));
  j.d1[0] = Vec3(1.0, 0.0, 2.0 * c_ * y[0]);
  j.d1[1] = Vec3(0.0, 1.0, 2.0 * c_ * y[1]);
  j.d2[0] = Vec3(0.0, 0.0, 2.0 * c_);
  j.d2[1].setZero();
  j.d2[2] = Vec3(0.0, 0.0, 2.0 * c_);
  for (auto& v : j.d3) v.setZero();
  return j;
}

ScaledChart::ScaledChart(ChartPtr base, double factor)
    : Chart(base->domain()), base_(std::move(base)), factor_(factor) {}

ChartJet ScaledChart::eval(const Vec2& y) const {
  ChartJet j = base_->eval(y);
  j.x *= factor_;
  for (auto& v : j.d1) v *= factor_;
  for (auto& v : j.d2) v *= factor_;
  for (auto& v : j.d3) v *= factor_;
  return j;
}

FiniteDifferenceChart::FiniteDifferenceChart(ChartPtr base, double step)
    : Chart(base->domain()), base_(std::move(base)), h_(step) {}

ChartJet FiniteDifferenceChart::eval(const Vec2& y) const {
  const Vec2 e1(h_, 0.0), e2(0.0, h_);
  const ChartJet c = base_->eval(y);
  const ChartJet p1 = base_->eval(y + e1), m1 = base_->eval(y - e1);
  const ChartJet p2 = base_->eval(y + e2), m2 = base_->eval(y - e2);
  const double s = 0.5 / h_;
  ChartJet j;
  j.x = c.x;
  j.d1[0] = (p1.x - m1.x) * s;
  j.d1[1] = (p2.x - m2.x) * s;
  j.d2[0] = (p1.d1[0] - m1.d1[0]) * s;
  j.d2[1] = (p2.d1[0] - m2.d1[0]) * s;
  j.d2[2] = (p2.d1[1] - m2.d1[1]) * s;
  j.d3[0] = (p1.d2[0] - m1.d2[0]) * s;
  j.d3[1] = (p2.d2[0] - m2.d2[0]) * s;
  j.d3[2] = (p2.d2[1] - m2.d2[1]) * s;
  j.d3[3] = (p2.d2[2] - m2.d2[2]) * s;
  return j;
}

std::vector<Vec2> sample_lattice(const Rectangle& rect, int m) {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>((m + 1) * (m + 1)));
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      pts.emplace_back(rect.lo1 + rect.length(0) * i / m, rect.lo2 + rect.length(1) * j / m);
    }
  }
  return pts;
}

ChartValidity check_chart(const Chart& chart, int lattice) {
  ChartValidity v;
  const auto pts = sample_lattice(chart.domain(), lattice);
  std::vector<Vec3> images;
  images.reserve(pts.size());
  v.min_cross_norm = std::numeric_limits<double>::infinity();
  double min_stretch = std::numeric_limits<double>::infinity();
  for (const auto& y : pts) {
    const ChartJet j = chart.eval(y);
    v.min_cross_norm = std::min(v.min_cross_norm, j.d1[0].cross(j.d1[1]).norm());
    Eigen::Matrix<double, 3, 2> J;
    J << j.d1[0], j.d1[1];
    min_stretch = std::min(min_stretch, Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>>(J).singularValues()[1]);
    images.push_back(j.x);
  }
  v.min_image_distance = std::numeric_limits<double>::infinity();
  v.min_distortion = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      const double d = (images[a] - images[b]).norm();
      v.min_image_distance = std::min(v.min_image_distance, d);
      v.min_distortion = std::min(v.min_distortion, d / (pts[a] - pts[b]).norm());
    }
  }
  v.independent = v.min_cross_norm > 1e-10;
  v.injective = v.min_image_distance > 1e-10 && v.min_distortion > 0.25 * min_stretch;
  return v;
}

}  // namespace vshell
