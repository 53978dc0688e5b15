#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "vshell/bspline.hpp"
#include "vshell/chart.hpp"
#include "vshell/constitutive.hpp"
#include "vshell/geometry.hpp"
#include "vshell/memory_stepper.hpp"
#include "vshell/shell2d.hpp"

namespace vshell {

/// Tensor-product grid on omega x (-H, H). H = 1 is the scaled domain;
/// H = eps gives the physical one. Degree 1 is the trilinear hexahedral
/// element; higher degrees use maximally smooth B-splines on the same grid.
struct Mesh3D {
  int n1 = 8, n2 = 8, n3 = 2;
  int degree_in_plane = 1;
  int degree_thickness = 1;
  EdgeSet clamped = kEdgeAll;  // gamma_0; the lateral face Gamma_0 = gamma_0 x [-H, H]
  double half_thickness = 1.0;
  int n_gauss = 0;             // per direction; default max(degree + 1, 3)
};

class Space3D {
 public:
  Space3D(const Rectangle& rect, const Mesh3D& mesh);

  int ndof() const { return ndof_; }
  const Mesh3D& mesh() const { return mesh_; }
  const Rectangle& rect() const { return rect_; }
  const BSplineBasis1D& basis(int dir) const { return bases_[dir]; }
  int dof(int comp, int i1, int i2, int i3) const;
  int n_gauss() const;

  /// Values of the three covariant components and their derivatives with
  /// respect to (y1, y2, z) at a point: out(i, 0) = u_i, out(i, 1 + j) = d_j u_i.
  Eigen::Matrix<double, 3, 4> evaluate(const Vec& coeffs, const Vec2& y, double z) const;

  /// Sparse map from coefficients to the thickness averages (trapezoidal rule
  /// on n_layers intervals) of (u_1, u_2, u_3) at the points; row 3 p + i is
  /// component i at point p.
  SpMat averaging_operator(const std::vector<Vec2>& pts, int n_layers) const;

 private:
  Rectangle rect_;
  Mesh3D mesh_;
  std::array<BSplineBasis1D, 3> bases_;
  std::vector<int> map_;  // per scalar function, dof of component 0
  int ndof_ = 0;
};

/// Displacement v_i and dv(i, j) = d_j v_i, where j = 2 differentiates in the
/// scaled transverse variable x3.
struct DisplacementJet3D {
  Vec3 v = Vec3::Zero();
  Mat3 dv = Mat3::Zero();
};

/// e_{i||j}(eps; v) = (D_j v_i + D_i v_j)/2 - Gamma^p_ij(eps) v_p with
/// D_a = d_a and D_3 = (1/eps) d_3.
Mat3 scaled_strain(double eps, const Metrics3D& g, const DisplacementJet3D& v);

/// Same with D_3 = s3 d_3 (s3 = 1 for derivatives in the physical variable).
Mat3 strain_with_transverse_factor(double s3, const Metrics3D& g, const DisplacementJet3D& v);

struct System3D {
  std::shared_ptr<const Space3D> space;
  double eps = 0.0;
  SpMat A, B;  // elastic and viscous forms
  Vec F;       // load at time factor 1
};

/// Assembles int A^{ijkl}(eps) e_kl(u) e_ij(v) sqrt(g) dx and the B-form on
/// the Gamma_0-constrained space, and the load
///   eps^p (int f^p v sqrt(g) dx + int_{Gamma+ u Gamma-} h^(p+1) v sqrt(g) dGamma).
/// With mesh.half_thickness = eps the forms are those of the physical domain.
/// Throws SingularSpace if gamma_0 is empty.
System3D assemble_3d(const Chart& chart, const MaterialParams& m, const Mesh3D& mesh, double eps,
                     const ScaledForces& forces);

/// (1/2H) int_{-H}^{H} u dz by the trapezoidal rule on n_layers intervals.
Vec3 thickness_average(const std::function<Vec3(double)>& u, double half_thickness, int n_layers);
Vec3 thickness_average(const Space3D& space, const Vec& coeffs, const Vec2& y, int n_layers = 32);

/// One run of the two-dimensional model against the scaled 3D problem.
struct StudyProblem {
  std::string name;
  ChartPtr chart;
  MaterialParams material;
  ShellModel model = ShellModel::membrane;
  std::shared_ptr<const FunctionSpace2D> space2d;
  Mesh3D mesh3d;
  ScaledForces forces;
  double T = 2.0;
  int n_steps = 50;
  Scheme scheme = Scheme::trapezoidal;
  int lattice = 32;
  int layers = 32;
};

struct StudyRow {
  double eps = 0.0;
  double error = 0.0;                  // relative, all components
  std::array<double, 3> component{};   // relative, per covariant component
  int dofs3d = 0;
  int dofs2d = 0;
  double seconds = 0.0;
};

/// Relative L2(omega) x discrete L2(time) distance between the thickness
/// average of u(eps) and the eps-independent two-dimensional solution.
std::vector<StudyRow> asymptotic_study(const StudyProblem& problem, const std::vector<double>& eps_list);

}  // namespace vshell
