#include "vshell/shell2d.hpp"

#include <algorithm>
#include <cmath>

#include "vshell/errors.hpp"

namespace vshell {

std::string to_string(ShellModel m) { return m == ShellModel::membrane ? "membrane" : "flexural"; }

ShellModel shell_model_from_string(const std::string& s) {
  if (s == "membrane") return ShellModel::membrane;
  if (s == "flexural") return ShellModel::flexural;
  throw Error(ErrorKind::ConfigError, "unknown model '" + s + "'");
}

FunctionSpace2D::FunctionSpace2D(const Rectangle& rect, int n1, int n2, const std::array<ComponentSpace, 3>& comps,
                                 EdgeSet clamped, bool clamp_normal_derivative)
    : rect_(rect), n1_(n1), n2_(n2), comps_(comps), clamped_(clamped), clamp_dn_(clamp_normal_derivative) {
  for (int c = 0; c < 3; ++c) {
    const auto& cs = comps_[c];
    if (!cs.active) continue;
    bases_[c][0] = BSplineBasis1D(rect.lo1, rect.hi1, n1, cs.degree, cs.continuity);
    bases_[c][1] = BSplineBasis1D(rect.lo2, rect.hi2, n2, cs.degree, cs.continuity);
  }
  for (int c = 0; c < 3; ++c) {
    if (!comps_[c].active) continue;
    const int s1 = bases_[c][0].size(), s2 = bases_[c][1].size();
    const int depth = !comps_[c].clamped ? 0 : (c == 2 && clamp_dn_) ? 2 : 1;
    map_[c].assign(static_cast<std::size_t>(s1 * s2), -1);
    for (int i2 = 0; i2 < s2; ++i2) {
      for (int i1 = 0; i1 < s1; ++i1) {
        bool removed = false;
        if ((clamped & kEdgeLeft) && i1 < depth) removed = true;
        if ((clamped & kEdgeRight) && i1 >= s1 - depth) removed = true;
        if ((clamped & kEdgeBottom) && i2 < depth) removed = true;
        if ((clamped & kEdgeTop) && i2 >= s2 - depth) removed = true;
        if (!removed) {
          map_[c][i1 + s1 * i2] = ndof_++;
          dof_comp_.push_back(c);
        }
      }
    }
  }
}

int FunctionSpace2D::max_degree() const {
  int p = 0;
  for (const auto& c : comps_)
    if (c.active) p = std::max(p, c.degree);
  return p;
}

int FunctionSpace2D::dof(int c, int i1, int i2) const {
  if (!comps_[c].active) return -1;
  return map_[c][i1 + bases_[c][0].size() * i2];
}

DisplacementJet BasisSample::jet() const {
  DisplacementJet j;
  j.v[comp] = value;
  j.d1(comp, 0) = d1[0];
  j.d1(comp, 1) = d1[1];
  j.d2[comp] << d2[0], d2[1], d2[1], d2[2];
  return j;
}

DisplacementJet FunctionSpace2D::evaluate(const Vec& x, const Vec2& y) const {
  DisplacementJet out;
  Eigen::MatrixXd D1, D2;
  for (int c = 0; c < 3; ++c) {
    if (!comps_[c].active) continue;
    const auto& b1 = bases_[c][0];
    const auto& b2 = bases_[c][1];
    const int f1 = b1.eval(b1.element_of(y[0]), y[0], 2, D1);
    const int f2 = b2.eval(b2.element_of(y[1]), y[1], 2, D2);
    for (int j2 = 0; j2 < D2.cols(); ++j2) {
      for (int j1 = 0; j1 < D1.cols(); ++j1) {
        const int d = dof(c, f1 + j1, f2 + j2);
        if (d < 0) continue;
        const double w = x[d];
        out.v[c] += w * D1(0, j1) * D2(0, j2);
        out.d1(c, 0) += w * D1(1, j1) * D2(0, j2);
        out.d1(c, 1) += w * D1(0, j1) * D2(1, j2);
        out.d2[c](0, 0) += w * D1(2, j1) * D2(0, j2);
        out.d2[c](0, 1) += w * D1(1, j1) * D2(1, j2);
        out.d2[c](1, 1) += w * D1(0, j1) * D2(2, j2);
      }
    }
    out.d2[c](1, 0) = out.d2[c](0, 1);
  }
  return out;
}

SpMat FunctionSpace2D::evaluation_operator(const std::vector<Vec2>& pts) const {
  std::vector<Eigen::Triplet<double>> t;
  Eigen::MatrixXd D1, D2;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const Vec2& y = pts[p];
    for (int c = 0; c < 3; ++c) {
      if (!comps_[c].active) continue;
      const auto& b1 = bases_[c][0];
      const auto& b2 = bases_[c][1];
      const int f1 = b1.eval(b1.element_of(y[0]), y[0], 0, D1);
      const int f2 = b2.eval(b2.element_of(y[1]), y[1], 0, D2);
      for (int j2 = 0; j2 < D2.cols(); ++j2) {
        for (int j1 = 0; j1 < D1.cols(); ++j1) {
          const int d = dof(c, f1 + j1, f2 + j2);
          if (d >= 0) t.emplace_back(static_cast<int>(3 * p) + c, d, D1(0, j1) * D2(0, j2));
        }
      }
    }
  }
  SpMat m(static_cast<int>(3 * pts.size()), ndof_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

int default_gauss_points(const FunctionSpace2D& space) { return space.max_degree() + 2; }

void for_each_element(const Chart& chart, const FunctionSpace2D& space, int n_gauss, const ElementVisitor& visit) {
  if (n_gauss <= 0) n_gauss = default_gauss_points(space);
  const GaussRule g = gauss_legendre(n_gauss);
  const Rectangle& r = space.rect();
  const int n1 = space.n_elems(0), n2 = space.n_elems(1);
  const double h1 = r.length(0) / n1, h2 = r.length(1) / n2;
  ElementQuadrature eq;
  Eigen::MatrixXd D1, D2;
  std::vector<int> first1(3), first2(3);
  for (int e2 = 0; e2 < n2; ++e2) {
    for (int e1 = 0; e1 < n1; ++e1) {
      eq.e1 = e1;
      eq.e2 = e2;
      eq.dofs.clear();
      eq.frames.clear();
      eq.weights.clear();
      eq.samples.clear();
      const double x0 = r.lo1 + h1 * e1, y0 = r.lo2 + h2 * e2;
      bool first_point = true;
      for (int q2 = 0; q2 < n_gauss; ++q2) {
        for (int q1 = 0; q1 < n_gauss; ++q1) {
          const Vec2 y(x0 + 0.5 * h1 * (g.x[q1] + 1.0), y0 + 0.5 * h2 * (g.x[q2] + 1.0));
          eq.frames.push_back(eval_frame(chart, y));
          eq.weights.push_back(g.w[q1] * g.w[q2] * 0.25 * h1 * h2);
          std::vector<BasisSample> samples;
          for (int c = 0; c < 3; ++c) {
            if (!space.component(c).active) continue;
            const int f1 = space.basis(c, 0).eval(e1, y[0], 2, D1);
            const int f2 = space.basis(c, 1).eval(e2, y[1], 2, D2);
            for (int j2 = 0; j2 < D2.cols(); ++j2) {
              for (int j1 = 0; j1 < D1.cols(); ++j1) {
                const int d = space.dof(c, f1 + j1, f2 + j2);
                if (d < 0) continue;
                BasisSample s;
                s.dof = d;
                s.comp = c;
                s.value = D1(0, j1) * D2(0, j2);
                s.d1[0] = D1(1, j1) * D2(0, j2);
                s.d1[1] = D1(0, j1) * D2(1, j2);
                s.d2[0] = D1(2, j1) * D2(0, j2);
                s.d2[1] = D1(1, j1) * D2(1, j2);
                s.d2[2] = D1(0, j1) * D2(2, j2);
                samples.push_back(s);
                if (first_point) eq.dofs.push_back(d);
              }
            }
          }
          eq.samples.push_back(std::move(samples));
          first_point = false;
        }
      }
      visit(eq);
    }
  }
}

Mat2 gamma(const SurfaceFrame& f, const DisplacementJet& eta) {
  Mat2 g;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double v = 0.5 * (eta.d1(a, b) + eta.d1(b, a)) - f.b_lo(a, b) * eta.v[2];
      for (int s = 0; s < 2; ++s) v -= f.christoffel[s](a, b) * eta.v[s];
      g(a, b) = v;
    }
  }
  return g;
}

Mat2 rho(const SurfaceFrame& f, const DisplacementJet& eta) {
  Mat2 r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double v = eta.d2[2](a, b);
      for (int s = 0; s < 2; ++s) {
        v -= f.christoffel[s](a, b) * eta.d1(2, s);
        v -= f.b_mix(s, a) * f.b_lo(s, b) * eta.v[2];
      }
      for (int s = 0; s < 2; ++s) {
        double cov = eta.d1(s, b);
        for (int t = 0; t < 2; ++t) cov -= f.christoffel[t](b, s) * eta.v[t];
        v += f.b_mix(s, a) * cov;
      }
      for (int t = 0; t < 2; ++t) {
        double cov = eta.d1(t, a);
        for (int s = 0; s < 2; ++s) cov -= f.christoffel[s](a, t) * eta.v[s];
        v += f.b_mix(t, b) * cov;
        v += f.b_cov[a](t, b) * eta.v[t];
      }
      r(a, b) = v;
    }
  }
  return r;
}

Eigen::Vector3d engineering(const Mat2& t) { return {t(0, 0), t(1, 1), t(0, 1) + t(1, 0)}; }

namespace {

// Gathers the strain operator (3 x nloc) of every quadrature point.
Eigen::MatrixXd strain_operator(ShellModel model, const SurfaceFrame& f, const std::vector<BasisSample>& s) {
  Eigen::MatrixXd B(3, static_cast<int>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) {
    const DisplacementJet jet = s[j].jet();
    B.col(static_cast<int>(j)) = engineering(model == ShellModel::membrane ? gamma(f, jet) : rho(f, jet));
  }
  return B;
}

void scatter(const std::vector<int>& dofs, const Eigen::MatrixXd& K, std::vector<Eigen::Triplet<double>>& t) {
  const int n = static_cast<int>(dofs.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (K(i, j) != 0.0) t.emplace_back(dofs[i], dofs[j], K(i, j));
}

SpMat from_triplets(int n, const std::vector<Eigen::Triplet<double>>& t) {
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace

ShellForms assemble_forms(ShellModel model, const Chart& chart, const MaterialParams& m,
                          const FunctionSpace2D& space, double eps, int n_gauss) {
  const double scale = model == ShellModel::membrane ? eps : eps * eps * eps / 3.0;
  const auto ca = tensor2d_coefficients(Tensor2DKind::a, m);
  const auto cb = tensor2d_coefficients(Tensor2DKind::b, m);
  const auto cc = tensor2d_coefficients(Tensor2DKind::c, m);
  std::vector<Eigen::Triplet<double>> ta, tb, tc;
  for_each_element(chart, space, n_gauss, [&](const ElementQuadrature& eq) {
    const int n = static_cast<int>(eq.dofs.size());
    Eigen::MatrixXd Ka = Eigen::MatrixXd::Zero(n, n), Kb = Ka, Kc = Ka;
    for (std::size_t q = 0; q < eq.frames.size(); ++q) {
      const SurfaceFrame& f = eq.frames[q];
      const double w = eq.weights[q] * f.sqrt_a * scale;
      const Eigen::MatrixXd B = strain_operator(model, f, eq.samples[q]);
      const Eigen::Matrix3d Va = voigt(isotropic2d(f.a_up, ca[0], ca[1])) * w;
      const Eigen::Matrix3d Vb = voigt(isotropic2d(f.a_up, cb[0], cb[1])) * w;
      const Eigen::Matrix3d Vc = voigt(isotropic2d(f.a_up, cc[0], cc[1])) * w;
      Ka.noalias() += B.transpose() * (Va * B);
      Kb.noalias() += B.transpose() * (Vb * B);
      Kc.noalias() += B.transpose() * (Vc * B);
    }
    scatter(eq.dofs, Ka, ta);
    scatter(eq.dofs, Kb, tb);
    scatter(eq.dofs, Kc, tc);
  });
  const int n = space.ndof();
  return {from_triplets(n, ta), from_triplets(n, tb), from_triplets(n, tc)};
}

SpMat gamma_gram(const Chart& chart, const FunctionSpace2D& space, int n_gauss) {
  std::vector<Eigen::Triplet<double>> t;
  const Eigen::Vector3d W(1.0, 1.0, 0.5);
  for_each_element(chart, space, n_gauss, [&](const ElementQuadrature& eq) {
    const int n = static_cast<int>(eq.dofs.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < eq.frames.size(); ++q) {
      const SurfaceFrame& f = eq.frames[q];
      const Eigen::MatrixXd B = strain_operator(ShellModel::membrane, f, eq.samples[q]);
      K.noalias() += B.transpose() * ((eq.weights[q] * f.sqrt_a) * W).asDiagonal() * B;
    }
    scatter(eq.dofs, K, t);
  });
  return from_triplets(space.ndof(), t);
}

SpMat gram_matrix(const Chart& chart, const FunctionSpace2D& space, const std::array<int, 3>& orders, int n_gauss) {
  std::vector<Eigen::Triplet<double>> t;
  for_each_element(chart, space, n_gauss, [&](const ElementQuadrature& eq) {
    const int n = static_cast<int>(eq.dofs.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < eq.frames.size(); ++q) {
      const auto& s = eq.samples[q];
      const double w = eq.weights[q] * eq.frames[q].sqrt_a;
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          if (s[i].comp != s[j].comp) continue;
          const int ord = orders[s[i].comp];
          double v = s[i].value * s[j].value;
          if (ord >= 1) v += s[i].d1[0] * s[j].d1[0] + s[i].d1[1] * s[j].d1[1];
          if (ord >= 2) v += s[i].d2[0] * s[j].d2[0] + 2.0 * s[i].d2[1] * s[j].d2[1] + s[i].d2[2] * s[j].d2[2];
          K(i, j) += w * v;
        }
      }
    }
    scatter(eq.dofs, K, t);
  });
  return from_triplets(space.ndof(), t);
}

ThicknessLoad scaled_load(const ScaledForces& forces, double eps) {
  ThicknessLoad load;
  const double fp = std::pow(eps, forces.order);
  const double hp = fp * eps;
  if (forces.f) {
    load.f = [forces, fp](const Vec2& y, double x3, double t) -> Vec3 {
      return fp * forces.time_value(t) * forces.f(y, x3);
    };
  }
  if (forces.h_plus) {
    load.h_plus = [forces, hp](const Vec2& y, double t) -> Vec3 { return hp * forces.time_value(t) * forces.h_plus(y); };
  }
  if (forces.h_minus) {
    load.h_minus = [forces, hp](const Vec2& y, double t) -> Vec3 {
      return hp * forces.time_value(t) * forces.h_minus(y);
    };
  }
  return load;
}

Vec3 resultant_density(const ThicknessLoad& load, double eps, const Vec2& y, double t) {
  static const GaussRule g = gauss_legendre(8);
  Vec3 p = Vec3::Zero();
  if (load.f) {
    for (std::size_t i = 0; i < g.x.size(); ++i) p += g.w[i] * load.f(y, g.x[i], t);
    p *= eps;
  }
  if (load.h_plus) p += load.h_plus(y, t);
  if (load.h_minus) p += load.h_minus(y, t);
  return p;
}

Vec load_resultant(const ThicknessLoad& load, double eps, const Chart& chart, const FunctionSpace2D& space, double t,
                   int n_gauss) {
  Vec out = Vec::Zero(space.ndof());
  if (!load.f && !load.h_plus && !load.h_minus) return out;
  for_each_element(chart, space, n_gauss, [&](const ElementQuadrature& eq) {
    for (std::size_t q = 0; q < eq.frames.size(); ++q) {
      const SurfaceFrame& f = eq.frames[q];
      const Vec3 p = resultant_density(load, eps, f.y, t);
      const double w = eq.weights[q] * f.sqrt_a;
      for (const auto& s : eq.samples[q]) out[s.dof] += w * p[s.comp] * s.value;
    }
  });
  return out;
}

KernelBasis generalized_kernel(const SpMat& G, const SpMat& N, double threshold) {
  const Eigen::MatrixXd Gd(G), Nd(N);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Gd, Nd);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "generalized eigensolver failed");
  KernelBasis kb;
  kb.eigenvalues = es.eigenvalues();
  kb.threshold = threshold;
  int r = 0;
  while (r < kb.eigenvalues.size() && kb.eigenvalues[r] <= threshold) ++r;
  kb.Z = es.eigenvectors().leftCols(r);
  if (r > 0 && r < kb.eigenvalues.size()) {
    kb.gap = kb.eigenvalues[r] / std::max(std::abs(kb.eigenvalues[r - 1]), 1e-300);
  }
  return kb;
}

double min_generalized_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& N) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, N, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "generalized eigensolver failed");
  return es.eigenvalues()[0];
}

Vec DiscreteShellSystem::reduce(const Vec& v) const { return Z ? Vec(Z->transpose() * v) : v; }

Vec DiscreteShellSystem::expand(const Vec& v) const { return Z ? Vec(*Z * v) : v; }

double DiscreteShellSystem::gamma_norm(const Vec& reduced) const {
  const Vec x = expand(reduced);
  return std::sqrt(std::max(0.0, x.dot(G * x)));
}

DiscreteShellSystem assemble(ShellModel model, ChartPtr chart, const MaterialParams& m,
                             std::shared_ptr<const FunctionSpace2D> space, double eps, int n_gauss) {
  if (space->ndof() == 0) throw Error(ErrorKind::SingularSpace, "constrained space is empty");
  DiscreteShellSystem sys;
  sys.model = model;
  sys.eps = eps;
  sys.material = m;
  sys.chart = chart;
  sys.space = space;
  sys.n_gauss = n_gauss > 0 ? n_gauss : default_gauss_points(*space);
  sys.full = assemble_forms(model, *chart, m, *space, eps, sys.n_gauss);
  sys.G = gamma_gram(*chart, *space, sys.n_gauss);
  if (model == ShellModel::flexural) {
    const SpMat N = gram_matrix(*chart, *space, {0, 0, 0}, sys.n_gauss);
    const KernelBasis kb = generalized_kernel(sys.G, N, kFlexuralKernelThreshold);
    if (kb.Z.cols() == 0) {
      throw Error(ErrorKind::SingularSpace, "no inextensional displacements in the discrete space");
    }
    sys.kernel_threshold = kb.threshold;
    sys.kernel_gap = kb.gap;
    sys.Z = kb.Z;
    const Eigen::MatrixXd& Z = *sys.Z;
    auto project = [&Z](const SpMat& M) {
      const Eigen::MatrixXd P = Z.transpose() * (M * Z);
      return SpMat(Eigen::MatrixXd(0.5 * (P + P.transpose())).sparseView());
    };
    sys.Ma = project(sys.full.a);
    sys.Mb = project(sys.full.b);
    sys.Mc = project(sys.full.c);
  } else {
    sys.Ma = sys.full.a;
    sys.Mb = sys.full.b;
    sys.Mc = sys.full.c;
  }
  return sys;
}

}  // namespace vshell
