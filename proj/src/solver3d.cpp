#include "vshell/solver3d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vshell/errors.hpp"

namespace vshell {

Space3D::Space3D(const Rectangle& rect, const Mesh3D& mesh) : rect_(rect), mesh_(mesh) {
  const int p = mesh.degree_in_plane, p3 = mesh.degree_thickness;
  bases_[0] = BSplineBasis1D(rect.lo1, rect.hi1, mesh.n1, p, p - 1);
  bases_[1] = BSplineBasis1D(rect.lo2, rect.hi2, mesh.n2, p, p - 1);
  bases_[2] = BSplineBasis1D(-mesh.half_thickness, mesh.half_thickness, mesh.n3, p3, p3 - 1);
  const int s1 = bases_[0].size(), s2 = bases_[1].size(), s3 = bases_[2].size();
  map_.assign(static_cast<std::size_t>(s1 * s2 * s3), -1);
  int count = 0;
  for (int i3 = 0; i3 < s3; ++i3) {
    for (int i2 = 0; i2 < s2; ++i2) {
      for (int i1 = 0; i1 < s1; ++i1) {
        const bool removed = ((mesh.clamped & kEdgeLeft) && i1 == 0) || ((mesh.clamped & kEdgeRight) && i1 == s1 - 1) ||
                             ((mesh.clamped & kEdgeBottom) && i2 == 0) || ((mesh.clamped & kEdgeTop) && i2 == s2 - 1);
        if (!removed) map_[i1 + s1 * (i2 + s2 * i3)] = 3 * count++;
      }
    }
  }
  ndof_ = 3 * count;
}

int Space3D::dof(int comp, int i1, int i2, int i3) const {
  const int s1 = bases_[0].size(), s2 = bases_[1].size();
  const int base = map_[i1 + s1 * (i2 + s2 * i3)];
  return base < 0 ? -1 : base + comp;
}

int Space3D::n_gauss() const {
  if (mesh_.n_gauss > 0) return mesh_.n_gauss;
  return std::max({mesh_.degree_in_plane + 1, mesh_.degree_thickness + 1, 3});
}

Eigen::Matrix<double, 3, 4> Space3D::evaluate(const Vec& x, const Vec2& y, double z) const {
  Eigen::MatrixXd D1, D2, D3;
  const int f1 = bases_[0].eval(bases_[0].element_of(y[0]), y[0], 1, D1);
  const int f2 = bases_[1].eval(bases_[1].element_of(y[1]), y[1], 1, D2);
  const int f3 = bases_[2].eval(bases_[2].element_of(z), z, 1, D3);
  Eigen::Matrix<double, 3, 4> out = Eigen::Matrix<double, 3, 4>::Zero();
  for (int j3 = 0; j3 < D3.cols(); ++j3) {
    for (int j2 = 0; j2 < D2.cols(); ++j2) {
      for (int j1 = 0; j1 < D1.cols(); ++j1) {
        const int d = dof(0, f1 + j1, f2 + j2, f3 + j3);
        if (d < 0) continue;
        const double n[4] = {D1(0, j1) * D2(0, j2) * D3(0, j3), D1(1, j1) * D2(0, j2) * D3(0, j3),
                             D1(0, j1) * D2(1, j2) * D3(0, j3), D1(0, j1) * D2(0, j2) * D3(1, j3)};
        for (int c = 0; c < 3; ++c)
          for (int k = 0; k < 4; ++k) out(c, k) += x[d + c] * n[k];
      }
    }
  }
  return out;
}

SpMat Space3D::averaging_operator(const std::vector<Vec2>& pts, int n_layers) const {
  const double H = mesh_.half_thickness;
  const int s3 = bases_[2].size();
  // Trapezoidal thickness averages of the transverse functions.
  Eigen::VectorXd avg3 = Eigen::VectorXd::Zero(s3);
  Eigen::MatrixXd D3;
  for (int k = 0; k <= n_layers; ++k) {
    const double z = -H + 2.0 * H * k / n_layers;
    const double w = (k == 0 || k == n_layers) ? 0.5 / n_layers : 1.0 / n_layers;
    const int f3 = bases_[2].eval(bases_[2].element_of(z), z, 0, D3);
    for (int j = 0; j < D3.cols(); ++j) avg3[f3 + j] += w * D3(0, j);
  }
  std::vector<Eigen::Triplet<double>> t;
  Eigen::MatrixXd D1, D2;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const Vec2& y = pts[p];
    const int f1 = bases_[0].eval(bases_[0].element_of(y[0]), y[0], 0, D1);
    const int f2 = bases_[1].eval(bases_[1].element_of(y[1]), y[1], 0, D2);
    for (int i3 = 0; i3 < s3; ++i3) {
      if (avg3[i3] == 0.0) continue;
      for (int j2 = 0; j2 < D2.cols(); ++j2) {
        for (int j1 = 0; j1 < D1.cols(); ++j1) {
          const int d = dof(0, f1 + j1, f2 + j2, i3);
          if (d < 0) continue;
          const double v = D1(0, j1) * D2(0, j2) * avg3[i3];
          for (int c = 0; c < 3; ++c) t.emplace_back(static_cast<int>(3 * p) + c, d + c, v);
        }
      }
    }
  }
  SpMat m(static_cast<int>(3 * pts.size()), ndof_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Mat3 strain_with_transverse_factor(double s3, const Metrics3D& g, const DisplacementJet3D& v) {
  Mat3 D = v.dv;
  D.col(2) *= s3;
  Mat3 e = 0.5 * (D + D.transpose());
  for (int p = 0; p < 3; ++p) e -= g.christoffel[p] * v.v[p];
  return e;
}

Mat3 scaled_strain(double eps, const Metrics3D& g, const DisplacementJet3D& v) {
  return strain_with_transverse_factor(1.0 / eps, g, v);
}

namespace {

constexpr int kPairs3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};

}  // namespace

System3D assemble_3d(const Chart& chart, const MaterialParams& m, const Mesh3D& mesh, double eps,
                     const ScaledForces& forces) {
  if (mesh.clamped == kEdgeNone) throw Error(ErrorKind::SingularSpace, "Gamma_0 is empty");
  auto space = std::make_shared<Space3D>(chart.domain(), mesh);
  const int ng = space->n_gauss();
  const GaussRule g = gauss_legendre(ng);
  const double H = mesh.half_thickness;
  const double s3 = H / eps;
  const double fscale = std::pow(eps, forces.order);
  const Rectangle& r = chart.domain();
  const double h1 = r.length(0) / mesh.n1, h2 = r.length(1) / mesh.n2, h3 = 2.0 * H / mesh.n3;
  const auto& B1 = space->basis(0);
  const auto& B2 = space->basis(1);
  const auto& B3 = space->basis(2);
  const int ns1 = B1.degree() + 1, ns2 = B2.degree() + 1, ns3 = B3.degree() + 1;
  const int ns = ns1 * ns2 * ns3, nloc = 3 * ns;

  std::vector<Eigen::Triplet<double>> ta, tb;
  Vec F = Vec::Zero(space->ndof());
  std::vector<int> dofs(nloc);
  std::vector<Eigen::MatrixXd> D1(ng), D2(ng), D3(ng);
  std::vector<SurfaceFrame> frames(static_cast<std::size_t>(ng * ng));
  Eigen::MatrixXd Ka(nloc, nloc), Kb(nloc, nloc), Bop(6, nloc);
  Eigen::VectorXd Fl(nloc);
  Eigen::MatrixXd Dface;

  for (int e2 = 0; e2 < mesh.n2; ++e2) {
    for (int e1 = 0; e1 < mesh.n1; ++e1) {
      int f1 = 0, f2 = 0;
      for (int q = 0; q < ng; ++q) {
        f1 = B1.eval(e1, r.lo1 + h1 * (e1 + 0.5 * (g.x[q] + 1.0)), 1, D1[q]);
        f2 = B2.eval(e2, r.lo2 + h2 * (e2 + 0.5 * (g.x[q] + 1.0)), 1, D2[q]);
      }
      for (int q2 = 0; q2 < ng; ++q2)
        for (int q1 = 0; q1 < ng; ++q1)
          frames[q1 + ng * q2] = eval_frame(chart, Vec2(r.lo1 + h1 * (e1 + 0.5 * (g.x[q1] + 1.0)),
                                                        r.lo2 + h2 * (e2 + 0.5 * (g.x[q2] + 1.0))));
      for (int e3 = 0; e3 < mesh.n3; ++e3) {
        int f3 = 0;
        for (int q = 0; q < ng; ++q) f3 = B3.eval(e3, -H + h3 * (e3 + 0.5 * (g.x[q] + 1.0)), 1, D3[q]);
        for (int j3 = 0, l = 0; j3 < ns3; ++j3)
          for (int j2 = 0; j2 < ns2; ++j2)
            for (int j1 = 0; j1 < ns1; ++j1, ++l)
              for (int c = 0; c < 3; ++c) dofs[3 * l + c] = space->dof(c, f1 + j1, f2 + j2, f3 + j3);
        Ka.setZero();
        Kb.setZero();
        Fl.setZero();
        for (int q3 = 0; q3 < ng; ++q3) {
          const double z = -H + h3 * (e3 + 0.5 * (g.x[q3] + 1.0));
          for (int q2 = 0; q2 < ng; ++q2) {
            for (int q1 = 0; q1 < ng; ++q1) {
              const SurfaceFrame& fr = frames[q1 + ng * q2];
              const Metrics3D met = eval_metrics3d(fr, z / H, eps);
              const double w = g.w[q1] * g.w[q2] * g.w[q3] * 0.125 * h1 * h2 * h3 * met.sqrt_g;
              Bop.setZero();
              Vec3 fval = Vec3::Zero();
              if (forces.f) fval = fscale * forces.f(fr.y, z / H);
              for (int j3 = 0, l = 0; j3 < ns3; ++j3) {
                for (int j2 = 0; j2 < ns2; ++j2) {
                  for (int j1 = 0; j1 < ns1; ++j1, ++l) {
                    const double N = D1[q1](0, j1) * D2[q2](0, j2) * D3[q3](0, j3);
                    const double D[3] = {D1[q1](1, j1) * D2[q2](0, j2) * D3[q3](0, j3),
                                         D1[q1](0, j1) * D2[q2](1, j2) * D3[q3](0, j3),
                                         s3 * D1[q1](0, j1) * D2[q2](0, j2) * D3[q3](1, j3)};
                    for (int c = 0; c < 3; ++c) {
                      const int col = 3 * l + c;
                      for (int I = 0; I < 6; ++I) {
                        const int i = kPairs3[I][0], j = kPairs3[I][1];
                        double e = 0.0;
                        if (i == c) e += 0.5 * D[j];
                        if (j == c) e += 0.5 * D[i];
                        e -= met.christoffel[c](i, j) * N;
                        Bop(I, col) = I < 3 ? e : 2.0 * e;
                      }
                      Fl[col] += w * fval[c] * N;
                    }
                  }
                }
              }
              const Eigen::Matrix<double, 6, 6> Va = voigt(isotropic3d(met.g_up, m.lambda, m.mu)) * w;
              const Eigen::Matrix<double, 6, 6> Vb = voigt(isotropic3d(met.g_up, m.theta, 0.5 * m.rho)) * w;
              Ka.noalias() += Bop.transpose() * (Va * Bop);
              Kb.noalias() += Bop.transpose() * (Vb * Bop);
            }
          }
        }
        // Face tractions on x3 = +1 (top element) and x3 = -1 (bottom element).
        for (int side = 0; side < 2; ++side) {
          const bool top = side == 0;
          if (top && e3 != mesh.n3 - 1) continue;
          if (!top && e3 != 0) continue;
          const auto& h = top ? forces.h_plus : forces.h_minus;
          if (!h) continue;
          const double z = top ? H : -H;
          B3.eval(e3, z, 0, Dface);
          for (int q2 = 0; q2 < ng; ++q2) {
            for (int q1 = 0; q1 < ng; ++q1) {
              const SurfaceFrame& fr = frames[q1 + ng * q2];
              const Metrics3D met = eval_metrics3d(fr, top ? 1.0 : -1.0, eps);
              const double w = g.w[q1] * g.w[q2] * 0.25 * h1 * h2 * met.sqrt_g;
              const Vec3 hv = fscale * h(fr.y);
              for (int j3 = 0, l = 0; j3 < ns3; ++j3)
                for (int j2 = 0; j2 < ns2; ++j2)
                  for (int j1 = 0; j1 < ns1; ++j1, ++l) {
                    const double N = D1[q1](0, j1) * D2[q2](0, j2) * Dface(0, j3);
                    for (int c = 0; c < 3; ++c) Fl[3 * l + c] += w * hv[c] * N;
                  }
            }
          }
        }
        for (int j = 0; j < nloc; ++j) {
          if (dofs[j] < 0) continue;
          F[dofs[j]] += Fl[j];
          for (int i = 0; i < nloc; ++i) {
            if (dofs[i] < 0) continue;
            ta.emplace_back(dofs[i], dofs[j], Ka(i, j));
            tb.emplace_back(dofs[i], dofs[j], Kb(i, j));
          }
        }
      }
    }
  }
  System3D sys;
  sys.space = space;
  sys.eps = eps;
  sys.A.resize(space->ndof(), space->ndof());
  sys.B.resize(space->ndof(), space->ndof());
  sys.A.setFromTriplets(ta.begin(), ta.end());
  sys.B.setFromTriplets(tb.begin(), tb.end());
  sys.A.makeCompressed();
  sys.B.makeCompressed();
  sys.F = F;
  return sys;
}

Vec3 thickness_average(const std::function<Vec3(double)>& u, double H, int n_layers) {
  Vec3 s = Vec3::Zero();
  for (int k = 0; k <= n_layers; ++k) {
    const double z = -H + 2.0 * H * k / n_layers;
    s += ((k == 0 || k == n_layers) ? 0.5 : 1.0) * u(z);
  }
  return s / n_layers;
}

Vec3 thickness_average(const Space3D& space, const Vec& coeffs, const Vec2& y, int n_layers) {
  return thickness_average([&](double z) -> Vec3 { return space.evaluate(coeffs, y, z).col(0); },
                           space.mesh().half_thickness, n_layers);
}

std::vector<StudyRow> asymptotic_study(const StudyProblem& pb, const std::vector<double>& eps_list) {
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw Error(ErrorKind::ConfigError, "eps list must be strictly decreasing");
  }
  const Chart& chart = *pb.chart;
  ScaledForces unit = pb.forces;
  unit.time_factor = nullptr;
  auto tf = [&pb](double t) { return pb.forces.time_value(t); };

  // Two-dimensional limit; with the eps-scaled forms and loads its solution
  // does not depend on eps, so it is computed once at eps = 1.
  const DiscreteShellSystem sys2 = assemble(pb.model, pb.chart, pb.material, pb.space2d, 1.0);
  const Vec P2 = sys2.reduce(load_resultant(scaled_load(unit, 1.0), 1.0, chart, *pb.space2d, 0.0));
  const TransientResult r2 = solve_transient(sys2, Vec::Zero(sys2.size()), [&](double t) -> Vec { return tf(t) * P2; },
                                             pb.T, pb.n_steps, pb.scheme);

  const Rectangle& rect = chart.domain();
  const std::vector<Vec2> pts = sample_lattice(rect, pb.lattice);
  std::vector<double> wpt(pts.size());
  for (int j = 0, p = 0; j <= pb.lattice; ++j) {
    for (int i = 0; i <= pb.lattice; ++i, ++p) {
      const double wi = (i == 0 || i == pb.lattice) ? 0.5 : 1.0;
      const double wj = (j == 0 || j == pb.lattice) ? 0.5 : 1.0;
      wpt[p] = wi * wj * eval_frame(chart, pts[p]).sqrt_a;
    }
  }
  const SpMat E2 = pb.space2d->evaluation_operator(pts);
  std::vector<Vec> xi_pts;
  for (const Vec& x : r2.xi) xi_pts.push_back(E2 * sys2.expand(x));

  std::vector<StudyRow> rows;
  for (double eps : eps_list) {
    const auto start = std::chrono::steady_clock::now();
    Mesh3D mesh = pb.mesh3d;
    mesh.half_thickness = 1.0;
    const System3D s3 = assemble_3d(chart, pb.material, mesh, eps, unit);
    EvolutionOperators ops{s3.A, s3.B, SpMat(s3.A.rows(), s3.A.cols()), 1.0};
    const Vec F = s3.F;
    const TransientResult r3 = solve_transient(ops, Vec::Zero(s3.space->ndof()),
                                               [&](double t) -> Vec { return tf(t) * F; }, pb.T, pb.n_steps, pb.scheme);
    const SpMat E3 = s3.space->averaging_operator(pts, pb.layers);
    std::array<double, 3> num{}, den{};
    for (std::size_t n = 1; n < r3.xi.size(); ++n) {
      const Vec u = E3 * r3.xi[n];
      const Vec& x = xi_pts[n];
      for (std::size_t p = 0; p < pts.size(); ++p) {
        for (int c = 0; c < 3; ++c) {
          const double d = u[3 * p + c] - x[3 * p + c];
          num[c] += wpt[p] * d * d;
          den[c] += wpt[p] * x[3 * p + c] * x[3 * p + c];
        }
      }
    }
    StudyRow row;
    row.eps = eps;
    const double tn = num[0] + num[1] + num[2], td = den[0] + den[1] + den[2];
    row.error = td > 0.0 ? std::sqrt(tn / td) : std::sqrt(tn);
    for (int c = 0; c < 3; ++c) row.component[c] = den[c] > 0.0 ? std::sqrt(num[c] / den[c]) : std::sqrt(num[c]);
    row.dofs3d = s3.space->ndof();
    row.dofs2d = pb.space2d->ndof();
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vshell
