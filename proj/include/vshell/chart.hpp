#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vshell {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Edges of the parameter rectangle, usable as a bit set.
enum Edge : unsigned {
  kEdgeNone = 0u,
  kEdgeLeft = 1u,    // y1 = lo1
  kEdgeRight = 2u,   // y1 = hi1
  kEdgeBottom = 4u,  // y2 = lo2
  kEdgeTop = 8u,     // y2 = hi2
  kEdgeAll = 15u,
};
using EdgeSet = unsigned;

std::string edges_to_string(EdgeSet edges);
EdgeSet edges_from_string(const std::string& text);

/// Axis-aligned parameter rectangle (lo1,hi1) x (lo2,hi2).
struct Rectangle {
  double lo1 = 0.0, hi1 = 1.0;
  double lo2 = 0.0, hi2 = 1.0;

  double length(int dir) const { return dir == 0 ? hi1 - lo1 : hi2 - lo2; }
  double lo(int dir) const { return dir == 0 ? lo1 : lo2; }
  double hi(int dir) const { return dir == 0 ? hi1 : hi2; }
};

/// Position of the middle surface and its partial derivatives up to third
/// order at one parameter point. Mixed derivatives are stored once, indexed by
/// how many derivatives are taken in direction 2.
struct ChartJet {
  Vec3 x = Vec3::Zero();
  std::array<Vec3, 2> d1{};  // d_1, d_2
  std::array<Vec3, 3> d2{};  // d_11, d_12, d_22
  std::array<Vec3, 4> d3{};  // d_111, d_112, d_122, d_222

  const Vec3& second(int a, int b) const { return d2[a + b]; }
  const Vec3& third(int a, int b, int c) const { return d3[a + b + c]; }
};

/// Analytic parametrization of a middle surface over a rectangle.
class Chart {
 public:
  virtual ~Chart() = default;

  virtual ChartJet eval(const Vec2& y) const = 0;
  virtual std::string name() const = 0;

  const Rectangle& domain() const { return domain_; }

 protected:
  explicit Chart(Rectangle domain) : domain_(domain) {}

 private:
  Rectangle domain_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// theta(y) = (y1, y2, 0).
class FlatChart final : public Chart {
 public:
  explicit FlatChart(Rectangle domain = {}) : Chart(domain) {}
  ChartJet eval(const Vec2& y) const override;
  std::string name() const override { return "flat"; }
};

/// theta(y) = (R cos(y1/R), R sin(y1/R), y2); y1 is arc length along the
/// directrix and y2 runs along the generatrices.
class CylinderChart final : public Chart {
 public:
  CylinderChart(double radius, Rectangle domain);
  ChartJet eval(const Vec2& y) const override;
  std::string name() const override { return "cylinder"; }
  double radius() const { return radius_; }

 private:
  double radius_;
};

/// theta(y) = (y1, y2, c (y1^2 + y2^2)).
class ParaboloidChart final : public Chart {
 public:
  ParaboloidChart(double curvature, Rectangle domain);
  ChartJet eval(const Vec2& y) const override;
  std::string name() const override { return "paraboloid"; }

 private:
  double c_;
};

/// Uniform dilation c * theta of another chart.
class ScaledChart final : public Chart {
 public:
  ScaledChart(ChartPtr base, double factor);
  ChartJet eval(const Vec2& y) const override;
  std::string name() const override { return "scaled_" + base_->name(); }

 private:
  ChartPtr base_;
  double factor_;
};

/// Chart whose derivatives come from central differences of another chart.
/// Test oracle only: derivatives of order k are differences of the analytic
/// derivatives of order k-1.
class FiniteDifferenceChart final : public Chart {
 public:
  FiniteDifferenceChart(ChartPtr base, double step);
  ChartJet eval(const Vec2& y) const override;
  std::string name() const override { return "fd_" + base_->name(); }

 private:
  ChartPtr base_;
  double h_;
};

/// Uniform (m+1) x (m+1) lattice over the chart rectangle, row-major in y2.
std::vector<Vec2> sample_lattice(const Rectangle& rect, int m);

struct ChartValidity {
  double min_cross_norm = 0.0;    // min |a_1 ^ a_2| over the lattice
  double min_image_distance = 0.0;  // min pairwise distance of images
  double min_distortion = 0.0;      // min |x(y) - x(y')| / |y - y'|
  bool independent = false;
  bool injective = false;
  bool ok() const { return independent && injective; }
};

/// Checks linear independence of a_1, a_2 and injectivity of the chart on a
/// sample lattice. Injectivity requires distinct images and a chord ratio
/// |x(y) - x(y')| / |y - y'| of at least a quarter of the smallest stretch of
/// the Jacobian.
ChartValidity check_chart(const Chart& chart, int lattice = 20);

}  // namespace vshell
