// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "vshell/app.hpp"
#include "vshell/bench_cases.hpp"
#include "vshell/constitutive.hpp"
#include "vshell/geometry.hpp"
#include "vshell/memory_stepper.hpp"
#include "vshell/shell2d.hpp"
#include "vshell/solver3d.hpp"
#include "vshell/verify.hpp"

using namespace vshell;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("[%s] AC%d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

const std::vector<double> kEps{1e-1, 1e-2, 1e-3};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double kd(int i, int j) { return i == j ? 1.0 : 0.0; }

// lambda g g + mu (g g + g g) on the metric m (3x3).
double iso(const Mat3& g, double l, double mu, int i, int j, int k, int q) {
  return l * g(i, j) * g(k, q) + mu * (g(i, k) * g(j, q) + g(i, q) * g(j, k));
}

constexpr int kP2[3][2] = {{0, 0}, {1, 1}, {0, 1}};
constexpr int kP3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};

double min_eig2(const Tensor2D& t) {
  Eigen::Matrix3d V;
  for (int I = 0; I < 3; ++I)
    for (int J = 0; J < 3; ++J) V(I, J) = t(kP2[I][0], kP2[I][1], kP2[J][0], kP2[J][1]);
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(V).eigenvalues().minCoeff();
}

double min_eig3(const Tensor3D& t) {
  Eigen::Matrix<double, 6, 6> V;
  for (int I = 0; I < 6; ++I)
    for (int J = 0; J < 6; ++J) V(I, J) = t(kP3[I][0], kP3[I][1], kP3[J][0], kP3[J][1]);
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>>(V).eigenvalues().minCoeff();
}

std::vector<MaterialParams> sweep(unsigned seed, int n) {
  std::mt19937 g(seed);
  std::uniform_real_distribution<double> lam(0.0, 20.0), pos(0.05, 5.0);
  std::vector<MaterialParams> out;
  for (int i = 0; i < n; ++i) out.push_back({lam(g), pos(g), pos(g), pos(g)});
  return out;
}

ChartPtr cap_chart() { return make_case("elliptic_cap").chart; }

void ac1() {
  const auto t0 = Clock::now();
  const ChartPtr chart = cap_chart();
  const auto pts = sample_lattice(chart->domain(), 8);
  std::array<std::vector<double>, 4> rem;
  for (double eps : kEps) {
    std::array<double, 4> r{};
    for (const Vec2& y : pts) {
      const SurfaceFrame f = eval_frame(*chart, y);
      for (double x3 : {-1.0, -0.5, 0.5, 1.0}) {
        const Metrics3D g = eval_metrics3d(f, x3, eps);
        const double e = eps * x3;
        r[0] = std::max(r[0], std::abs(g.det_g - f.det_a));
        for (int s = 0; s < 2; ++s)
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              r[1] = std::max(r[1], std::abs(g.christoffel[s](a, b) - f.christoffel[s](a, b) + e * f.b_cov[a](s, b)));
              if (s == 0) r[2] = std::max(r[2], std::abs(g.christoffel[2](a, b) - f.b_lo(a, b)));
            }
            double bb = 0.0;
            for (int t = 0; t < 2; ++t) bb += f.b_mix(t, a) * f.b_mix(s, t);
            r[3] = std::max(r[3], std::abs(g.christoffel[s](a, 2) + f.b_mix(s, a) + e * bb));
          }
      }
    }
    for (int q = 0; q < 4; ++q) rem[q].push_back(r[q]);
  }
  const double expected[4] = {1, 2, 1, 2};
  bool ok = true;
  std::string d = "slopes";
  for (int q = 0; q < 4; ++q) {
    const double s = slope(kEps, rem[q]);
    ok = ok && std::abs(s - expected[q]) <= 0.2;
    d += " " + fmt(s);
  }
  const double t = seconds(t0);
  ok = ok && t < 10.0;
  report(1, "geometry asymptotics", ok, d + " vs {1,2,1,2} +-0.2; " + fmt(t) + " s (< 10 s)");
}

void ac2() {
  bool ok = true;
  std::string d;
  double worst_closed = 0.0;
  const MaterialParams m{1.4, 0.8, 1.1, 0.6};
  for (const std::string name : {"elliptic_cap", "clamped_cylinder"}) {
    const ChartPtr chart = make_case(name).chart;
    const auto pts = sample_lattice(chart->domain(), 4);
    for (auto kind : {Tensor3DKind::A, Tensor3DKind::B}) {
      const double l = kind == Tensor3DKind::A ? m.lambda : m.theta;
      const double mu = kind == Tensor3DKind::A ? m.mu : 0.5 * m.rho;
      std::vector<double> dev;
      for (double eps : kEps) {
        double dmax = 0.0;
        for (const Vec2& y : pts) {
          const SurfaceFrame f = eval_frame(*chart, y);
          Mat3 g0 = Mat3::Zero();
          g0.topLeftCorner<2, 2>() = f.a_up;
          g0(2, 2) = 1.0;
          const Tensor3D lim = tensor3d_limit(kind, m, f);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k)
                for (int q = 0; q < 3; ++q) worst_closed = std::max(worst_closed, std::abs(lim(i, j, k, q) - iso(g0, l, mu, i, j, k, q)));
          for (int a = 0; a < 2; ++a)
            for (int s = 0; s < 2; ++s) worst_closed = std::max(worst_closed, std::abs(lim(a, 2, s, 2) - mu * f.a_up(a, s)));
          worst_closed = std::max(worst_closed, std::abs(lim(2, 2, 2, 2) - (l + 2 * mu)));
          for (double x3 : {-1.0, 0.5, 1.0}) {
            const Tensor3D t = tensor3d(kind, m, eval_metrics3d(f, x3, eps));
            for (std::size_t c = 0; c < t.c.size(); ++c) dmax = std::max(dmax, std::abs(t.c[c] - lim.c[c]));
          }
        }
        dev.push_back(dmax);
      }
      const double s = slope(kEps, dev);
      ok = ok && s >= 0.9;
      d += name + (kind == Tensor3DKind::A ? " A " : " B ") + fmt(s) + "; ";
    }
  }
  ok = ok && worst_closed <= 1e-12;
  report(2, "tensor limits", ok, "slopes " + d + "closed-form deviation " + fmt(worst_closed) + " (<= 1e-12)");
}

void ac3() {
  const auto mats = sweep(12345u, 100);
  double ma = 1e300, mb = 1e300, mc = 1e300, mA = 1e300, mB = 1e300;
  for (const std::string name : {"flat_plate", "clamped_cylinder", "elliptic_cap"}) {
    const ChartPtr chart = make_case(name).chart;
    const double eps0 = find_eps0(*chart);
    for (const auto& m : mats) {
      for (const Vec2& y : sample_lattice(chart->domain(), 3)) {
        const SurfaceFrame f = eval_frame(*chart, y);
        ma = std::min(ma, min_eig2(tensor2d(Tensor2DKind::a, m, f)));
        mb = std::min(mb, min_eig2(tensor2d(Tensor2DKind::b, m, f)));
        const Tensor2D c = tensor2d(Tensor2DKind::c, m, f);
        double scale = 1.0;
        for (double v : c.c) scale = std::max(scale, std::abs(v));
        mc = std::min(mc, min_eig2(c) / scale);
        for (double eps : {eps0, 0.1 * eps0, 1e-3})
          for (double x3 : {-1.0, 0.0, 1.0}) {
            const Metrics3D g = eval_metrics3d(f, x3, eps);
            mA = std::min(mA, min_eig3(tensor3d(Tensor3DKind::A, m, g)));
            mB = std::min(mB, min_eig3(tensor3d(Tensor3DKind::B, m, g)));
          }
      }
    }
  }
  const bool ok = ma > 0 && mb > 0 && mA > 0 && mB > 0 && mc >= -1e-13;
  report(3, "ellipticity", ok,
         "min eig a " + fmt(ma) + ", b " + fmt(mb) + ", A " + fmt(mA) + ", B " + fmt(mB) + " (> 0); c " + fmt(mc) +
             " (>= -1e-13); 100 materials, 3 charts");
}

void ac4() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  const ChartPtr chart = cap_chart();
  for (const auto& m : sweep(777u, 100)) {
    const SurfaceFrame f = eval_frame(*chart, Vec2(0.21, -0.33));
    const Tensor2D a = tensor2d(Tensor2DKind::a, m, f), c = tensor2d(Tensor2DKind::c, m, f);
    const double k = (m.lambda + 2 * m.mu) / (m.theta + m.rho);
    const double alpha = 4 * m.lambda * m.mu / (m.lambda + 2 * m.mu);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) {
            const double ref = alpha * f.a_up(i, j) * f.a_up(s, t) +
                               2 * m.mu * (f.a_up(i, s) * f.a_up(j, t) + f.a_up(i, t) * f.a_up(j, s));
            num = std::max(num, std::abs(a(i, j, s, t) - c(i, j, s, t) / k - ref));
            den = std::max(den, std::abs(ref));
          }
    worst = std::max(worst, num / den);
  }
  // Transient membrane run under a constant load.
  const CaseSpec cap = make_case("elliptic_cap");
  auto space = make_space(cap, ShellModel::membrane, 16, 16);
  const double eps = 0.1;
  const DiscreteShellSystem sys = assemble(ShellModel::membrane, cap.chart, cap.material, space, eps);
  const EvolutionOperators ops = evolution_operators(sys);
  const Vec p = sys.reduce(load_resultant(scaled_load(cap.membrane_forces, eps), eps, *cap.chart, *space, 0.0));
  const double T = 40.0 / ops.k;
  const TransientResult tr = solve_transient(ops, Vec::Zero(p.size()), [&](double) { return p; }, T, 400,
                                             Scheme::trapezoidal);
  const SpMat K = ops.Ma - ops.Mc / ops.k;
  Eigen::SimplicialLDLT<SpMat> ldlt(K);
  const Vec xinf = ldlt.solve(p);
  const double rel = (tr.xi.back() - xinf).norm() / xinf.norm();
  const double t = seconds(t0);
  const bool ok = worst <= 1e-12 && rel <= 1e-3 && t < 60.0;
  report(4, "steady-state elastic equivalence", ok,
         "tensor identity " + fmt(worst) + " (<= 1e-12); transient vs steady " + fmt(rel) + " (<= 1e-3) at n=16; " +
             fmt(t) + " s (< 60 s)");
}

void ac5() {
  const std::vector<TraceTrajectory> trajs{{"linear", [](double t) { return t; }},
                                           {"sine", [](double t) { return std::sin(2.0 * t); }},
                                           {"saturating", [](double t) { return 1.0 - std::exp(-t); }}};
  std::vector<double> times{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  double worst = 0.0, formula = 0.0;
  for (const MaterialParams& m : {MaterialParams{1, 1, 1, 1}, MaterialParams{100, 1, 1, 1}, MaterialParams{1, 1, 0.1, 0.1}}) {
    for (const auto& tr : trajs) worst = std::max(worst, verify_closure_ode(m, tr, times).max_residual);
    // e33 of the linear trajectory in closed form.
    const double L = m.lambda / m.theta - (m.lambda + 2 * m.mu) / (m.theta + m.rho), k = (m.lambda + 2 * m.mu) / (m.theta + m.rho);
    const ClosureReport r = verify_closure_ode(m, trajs[0], times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const double ref = -m.theta / (m.theta + m.rho) * (t + L * (t / k - (1 - std::exp(-k * t)) / (k * k)));
      formula = std::max(formula, std::abs(r.e33[i] - ref));
    }
  }
  report(5, "ODE closure", worst < 1e-7 && formula < 1e-9,
         "max residual " + fmt(worst) + " (< 1e-7) over 3 trajectories; e33 vs closed form " + fmt(formula));
}

void ac6() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string d;
  struct Item {
    std::string name;
    ShellModel model;
  };
  for (const Item& it : {Item{"flat_plate", ShellModel::membrane}, Item{"clamped_cylinder", ShellModel::flexural}}) {
    const CaseSpec c = make_case(it.name);
    const DiscreteShellSystem sys = assemble(it.model, c.chart, c.material, make_space(c, it.model, 4, 4), 1.0);
    const EvolutionOperators ops = evolution_operators(sys);
    std::mt19937 g(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec xh(ops.Ma.rows());
    for (auto& v : xh) v = u(g);
    const double k = ops.k;
    const Vec a = ops.Ma * xh, b = ops.Mb * xh, cc = ops.Mc * xh;
    auto load = [&](double t) -> Vec {
      const double hist = (k * std::sin(t) - std::cos(t) + std::exp(-k * t)) / (k * k + 1);
      return std::sin(t) * a + std::cos(t) * b - hist * cc;
    };
    for (Scheme s : {Scheme::trapezoidal, Scheme::backward_euler}) {
      std::vector<double> dts, errs;
      for (int N : {100, 200, 400}) {
        const TransientResult r = solve_transient(ops, Vec::Zero(xh.size()), load, c.T, N, s);
        errs.push_back((r.xi.back() - std::sin(c.T) * xh).norm() / (std::sin(c.T) * xh).norm());
        dts.push_back(c.T / N);
      }
      const double o = slope(dts, errs), want = s == Scheme::trapezoidal ? 2.0 : 1.0;
      ok = ok && std::abs(o - want) <= 0.1;
      d += it.name + " " + to_string(s) + " " + fmt(o) + "; ";
    }
  }
  const double t = seconds(t0);
  ok = ok && t < 120.0;
  report(6, "time-integration order", ok, d + "target 2/1 +-0.1; " + fmt(t) + " s (< 120 s)");
}

void ac7() {
  const CaseSpec cap = make_case("elliptic_cap"), cyl = make_case("clamped_cylinder");
  const double c4 = korn_constant(ShellModel::membrane, cap.chart, cap.material, make_space(cap, ShellModel::membrane, 4, 4));
  const double c8 = korn_constant(ShellModel::membrane, cap.chart, cap.material, make_space(cap, ShellModel::membrane, 8, 8));
  const double f4 = korn_constant(ShellModel::flexural, cyl.chart, cyl.material, make_space(cyl, ShellModel::flexural, 4, 4));
  const double f8 = korn_constant(ShellModel::flexural, cyl.chart, cyl.material, make_space(cyl, ShellModel::flexural, 8, 8));
  auto stable = [](double x, double y) { return x > 0 && y > 0 && y / x <= 2.0 && x / y <= 2.0; };
  report(7, "Korn coercivity", stable(c4, c8) && stable(f4, f8),
         "cap membrane " + fmt(c4) + " -> " + fmt(c8) + ", cylinder flexural " + fmt(f4) + " -> " + fmt(f8) +
             " (positive, within factor 2 under refinement)");
}

void ac8() {
  const CaseSpec cap = make_case("elliptic_cap"), cyl = make_case("clamped_cylinder");
  const double wc = inextensional_witness(*cyl.chart, *make_space(cyl, ShellModel::flexural, 16, 16));
  const FunctionSpace2D cap_space(cap.chart->domain(), 16, 16, cyl.flexural_space, cap.clamped, true);
  const double we = inextensional_witness(*cap.chart, cap_space);
  report(8, "space dichotomy witness", wc < 1e-2 && we > 1e-1,
         "cylinder " + fmt(wc) + " (< 1e-2), elliptic cap " + fmt(we) + " (> 1e-1) at n=16");
}

void ac9() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string d;
  for (const std::string name : {"flat_plate", "elliptic_cap", "clamped_cylinder"}) {
    const CaseSpec c = make_case(name);
    const StudyProblem p = make_study(c);
    const std::vector<StudyRow> rows = asymptotic_study(p, {0.2, 0.1, 0.05});
    bool mono = true;
    for (std::size_t i = 1; i < rows.size(); ++i) mono = mono && rows[i].error < rows[i - 1].error;
    const double factor = rows.front().error / rows.back().error;
    const bool mesh_ok = p.mesh3d.n1 <= 16 && p.mesh3d.n2 <= 16 && p.mesh3d.n3 <= 4;
    const bool case_ok = mono && factor >= 2.0 && mesh_ok;
    ok = ok && case_ok;
    d += name + " [" + fmt(rows[0].error) + " " + fmt(rows[1].error) + " " + fmt(rows[2].error) + "] x" + fmt(factor) +
         (case_ok ? "" : " (fails)") + "; ";
  }
  const double t = seconds(t0);
  ok = ok && t < 600.0;
  report(9, "3D to 2D asymptotics", ok, d + "need monotone and factor >= 2; " + fmt(t) + " s (< 600 s)");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void ac10() {
  const auto dir = std::filesystem::temp_directory_path() / "vshell_acceptance_determinism";
  std::filesystem::remove_all(dir);
  RunConfig run;
  run.case_name = "clamped_cylinder";
  run.n1 = run.n2 = 4;
  run.dt = 0.02;
  run.out = (dir / "run").string();
  RunConfig study;
  study.case_name = "flat_plate";
  study.n1 = study.n2 = 4;
  study.n3 = 2;
  study.dt = 0.1;
  study.eps = {0.2, 0.1};
  study.out = (dir / "study").string();
  const std::vector<std::filesystem::path> files{dir / "run/summary.json", dir / "run/timeseries.csv",
                                                 dir / "study/summary.json", dir / "study/errors.csv"};
  execute_run(run);
  execute_study(study);
  std::vector<std::string> first;
  for (const auto& f : files) first.push_back(slurp(f));
  execute_run(run);
  execute_study(study);
  bool same = true;
  for (std::size_t i = 0; i < files.size(); ++i) same = same && !first[i].empty() && slurp(files[i]) == first[i];
  const std::string v1 = execute_verify("tensors", 5, "").dump(), v2 = execute_verify("tensors", 5, "").dump();
  same = same && v1 == v2;
  report(10, "determinism", same, "run, study and verify outputs byte-identical across repeats");
}

}  // namespace

int main(int argc, char** argv) {
  // Optional list of criterion numbers to run.
  std::vector<std::function<void()>> all{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  for (int i = 1; i <= 10; ++i) {
    if (!pick.empty() && std::find(pick.begin(), pick.end(), i) == pick.end()) continue;
    try {
      all[i - 1]();
    } catch (const std::exception& e) {
      report(i, "exception", false, e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
