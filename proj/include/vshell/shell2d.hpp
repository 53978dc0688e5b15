#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "vshell/bspline.hpp"
#include "vshell/chart.hpp"
#include "vshell/constitutive.hpp"
#include "vshell/geometry.hpp"

namespace vshell {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

enum class ShellModel { membrane, flexural };
std::string to_string(ShellModel m);
ShellModel shell_model_from_string(const std::string& s);

/// Spline setting of one displacement component.
struct ComponentSpace {
  bool active = true;
  int degree = 2;
  int continuity = 1;
  bool clamped = true;  // vanishes on the clamped edges
};

/// Displacement eta = (eta_1, eta_2, eta_3) and its parameter derivatives at
/// a point: d1(i,a) = d_a eta_i, d2[i](a,b) = d_ab eta_i.
struct DisplacementJet {
  Vec3 v = Vec3::Zero();
  Eigen::Matrix<double, 3, 2> d1 = Eigen::Matrix<double, 3, 2>::Zero();
  std::array<Mat2, 3> d2{Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
};

/// Tensor-product spline space for (eta_1, eta_2, eta_3) over the chart
/// rectangle with homogeneous conditions on the clamped edges: components
/// flagged as clamped vanish there and, if clamp_normal_derivative is set, so
/// does the normal derivative of eta_3.
class FunctionSpace2D {
 public:
  FunctionSpace2D(const Rectangle& rect, int n1, int n2, const std::array<ComponentSpace, 3>& comps,
                  EdgeSet clamped, bool clamp_normal_derivative);

  int ndof() const { return ndof_; }
  int n_elems(int dir) const { return dir == 0 ? n1_ : n2_; }
  const Rectangle& rect() const { return rect_; }
  const ComponentSpace& component(int c) const { return comps_[c]; }
  const BSplineBasis1D& basis(int c, int dir) const { return bases_[c][dir]; }
  EdgeSet clamped() const { return clamped_; }
  bool clamps_normal_derivative() const { return clamp_dn_; }
  int max_degree() const;

  /// Global dof of tensor-product function (i1, i2) of component c, or -1.
  int dof(int c, int i1, int i2) const;
  /// Component of a global dof.
  int dof_component(int d) const { return dof_comp_[d]; }

  DisplacementJet evaluate(const Vec& coeffs, const Vec2& y) const;

  /// Sparse map from coefficients to (eta_1, eta_2, eta_3) at the points; row
  /// 3 p + i is component i at point p.
  SpMat evaluation_operator(const std::vector<Vec2>& pts) const;

 private:
  Rectangle rect_;
  int n1_, n2_;
  std::array<ComponentSpace, 3> comps_;
  EdgeSet clamped_;
  bool clamp_dn_;
  std::array<std::array<BSplineBasis1D, 2>, 3> bases_;
  std::array<std::vector<int>, 3> map_;
  std::vector<int> dof_comp_;
  int ndof_ = 0;
};

/// One basis function restricted to a quadrature point.
struct BasisSample {
  int dof;
  int comp;
  double value;
  double d1[2];
  double d2[3];  // 11, 12, 22
  DisplacementJet jet() const;
};

/// Quadrature data of one element: the active dofs touching it, and for each
/// quadrature point the surface frame, the weight in parameter coordinates
/// (without sqrt(a)) and one sample per local dof, in the order of dofs.
struct ElementQuadrature {
  int e1 = 0, e2 = 0;
  std::vector<int> dofs;
  std::vector<SurfaceFrame> frames;
  std::vector<double> weights;
  std::vector<std::vector<BasisSample>> samples;
};

/// Visits the elements in a fixed order (e2 outer, e1 inner).
using ElementVisitor = std::function<void(const ElementQuadrature&)>;
void for_each_element(const Chart& chart, const FunctionSpace2D& space, int n_gauss, const ElementVisitor& visit);

/// gamma_ab(eta): change of metric tensor.
Mat2 gamma(const SurfaceFrame& f, const DisplacementJet& eta);
/// rho_ab(eta): change of curvature tensor.
Mat2 rho(const SurfaceFrame& f, const DisplacementJet& eta);

/// Engineering vector (t11, t22, 2 t12) of a symmetric 2x2 tensor.
Eigen::Vector3d engineering(const Mat2& t);

/// Thickness-distributed load in contravariant components, already carrying
/// its eps powers: f(y, x3, t) for x3 in (-1, 1) and surface tractions on the
/// upper and lower faces.
struct ThicknessLoad {
  std::function<Vec3(const Vec2&, double, double)> f;
  std::function<Vec3(const Vec2&, double)> h_plus;
  std::function<Vec3(const Vec2&, double)> h_minus;
};

/// Applied forces of order p: body force f(eps) = eps^p f^p and face
/// tractions h(eps) = eps^(p+1) h^(p+1), in contravariant components, with a
/// common scalar time profile.
struct ScaledForces {
  int order = 0;
  std::function<Vec3(const Vec2&, double)> f;        // f^p(y, x3)
  std::function<Vec3(const Vec2&)> h_plus, h_minus;  // h^(p+1) on x3 = +1 / -1
  std::function<double(double)> time_factor;         // defaults to 1
  double time_value(double t) const { return time_factor ? time_factor(t) : 1.0; }
};

/// The thickness load seen by the two-dimensional problem at half-thickness eps.
ThicknessLoad scaled_load(const ScaledForces& forces, double eps);

/// Resultant p^i = eps * int_{-1}^{1} f^i dx3 + h_+^i + h_-^i.
Vec3 resultant_density(const ThicknessLoad& load, double eps, const Vec2& y, double t);

/// Vector of int p^i eta_i sqrt(a) dy over the basis functions.
Vec load_resultant(const ThicknessLoad& load, double eps, const Chart& chart, const FunctionSpace2D& space,
                   double t, int n_gauss = 0);

/// Block-diagonal Gram matrix of the per-component Sobolev norms given by
/// orders[c] in {0, 1, 2}, weighted by sqrt(a) in parameter coordinates.
SpMat gram_matrix(const Chart& chart, const FunctionSpace2D& space, const std::array<int, 3>& orders,
                  int n_gauss = 0);

/// Matrix of int gamma_ab(u) gamma_ab(v) sqrt(a) dy (sum over a, b).
SpMat gamma_gram(const Chart& chart, const FunctionSpace2D& space, int n_gauss = 0);

/// The three bilinear forms a, b, c on a space.
struct ShellForms {
  SpMat a, b, c;
};

/// Assembles scale * int T^{abst} s_st(u) s_ab(v) sqrt(a) dy for the tensors
/// a, b, c, where s is gamma (membrane) or rho (flexural) and scale is eps or
/// eps^3/3.
ShellForms assemble_forms(ShellModel model, const Chart& chart, const MaterialParams& m,
                          const FunctionSpace2D& space, double eps, int n_gauss = 0);

/// Generalized eigenvalues (gamma_gram against the L2 Gram matrix) at or
/// below this value span the discrete inextensional space.
inline constexpr double kFlexuralKernelThreshold = 1e-8;

/// Assembled two-dimensional problem.
///
/// For the flexural model the unknowns are restricted to the numerical kernel
/// of gamma_gram (the discrete inextensional displacements); Z holds an
/// L2-orthonormal basis of that kernel and Ma, Mb, Mc are the projected
/// matrices. Without reduction, Z is empty and the matrices act on the full
/// constrained space.
struct DiscreteShellSystem {
  ShellModel model = ShellModel::membrane;
  double eps = 0.0;
  MaterialParams material;
  ChartPtr chart;
  std::shared_ptr<const FunctionSpace2D> space;
  int n_gauss = 0;
  ShellForms full;
  SpMat G;  // gamma_gram on the full space
  std::optional<Eigen::MatrixXd> Z;
  SpMat Ma, Mb, Mc;
  double kernel_threshold = 0.0;
  double kernel_gap = 0.0;  // first discarded / last kept generalized eigenvalue

  int size() const { return static_cast<int>(Ma.rows()); }
  Vec reduce(const Vec& full_vec) const;   // load on the full space -> solve space
  Vec expand(const Vec& reduced) const;    // solve space -> full coefficients
  double gamma_norm(const Vec& reduced) const;
};

/// Builds the discrete system. Throws SingularSpace when the space (or, for
/// the flexural model, its inextensional kernel) is empty.
DiscreteShellSystem assemble(ShellModel model, ChartPtr chart, const MaterialParams& m,
                             std::shared_ptr<const FunctionSpace2D> space, double eps, int n_gauss = 0);

/// Numerical kernel of G relative to the Gram matrix N: eigenvectors of
/// G v = lambda N v with lambda <= threshold, N-orthonormal, as columns.
struct KernelBasis {
  Eigen::MatrixXd Z;
  Eigen::VectorXd eigenvalues;
  double threshold = 0.0;
  double gap = 0.0;
};
KernelBasis generalized_kernel(const SpMat& G, const SpMat& N, double threshold);

/// Smallest eigenvalue of A v = lambda N v (dense; for moderate sizes).
double min_generalized_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& N);

/// Default quadrature points per span: max degree + 2.
int default_gauss_points(const FunctionSpace2D& space);

}  // namespace vshell
