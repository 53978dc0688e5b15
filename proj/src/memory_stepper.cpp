#include "vshell/memory_stepper.hpp"

#include <chrono>
#include <cmath>

#include "vshell/errors.hpp"

namespace vshell {

std::string to_string(Scheme s) { return s == Scheme::trapezoidal ? "trapezoidal" : "backward_euler"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "trapezoidal" || s == "trap") return Scheme::trapezoidal;
  if (s == "backward_euler" || s == "be") return Scheme::backward_euler;
  throw Error(ErrorKind::ConfigError, "unknown scheme '" + s + "'");
}

EvolutionOperators evolution_operators(const DiscreteShellSystem& sys) {
  return {sys.Ma, sys.Mb, sys.Mc, memory_constants(sys.material).k};
}

HistoryWeights history_weights(double k, double dt, Scheme scheme) {
  HistoryWeights w;
  const double x = k * dt;
  w.E = std::exp(-x);
  // (1 - E)/k and (1 - E (1 + x))/k^2, by series for small x.
  double one_minus_e, one_minus_e1x;
  if (x < 1e-3) {
    one_minus_e = x * (1.0 - x / 2.0 * (1.0 - x / 3.0 * (1.0 - x / 4.0 * (1.0 - x / 5.0))));
    one_minus_e1x = x * x * (0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0 + x * x * x * x / 144.0);
  } else {
    one_minus_e = -std::expm1(-x);
    one_minus_e1x = one_minus_e - x * w.E;
  }
  const double total = one_minus_e / k;
  if (scheme == Scheme::backward_euler) {
    w.w0 = 0.0;
    w.w1 = total;
  } else {
    w.w0 = one_minus_e1x / (k * k * dt);
    w.w1 = total - w.w0;
  }
  return w;
}

MemoryStepper::MemoryStepper(EvolutionOperators ops, double dt, Scheme scheme)
    : ops_(std::move(ops)), dt_(dt), scheme_(scheme) {
  if (!(dt > 0.0)) throw Error(ErrorKind::ConfigError, "time step must be positive");
  w_ = history_weights(ops_.k, dt, scheme);
  SpMat S;
  if (scheme == Scheme::trapezoidal) {
    S = ops_.Mb / dt + 0.5 * ops_.Ma - (0.5 * w_.w1) * ops_.Mc;
    rhs_xi_ = ops_.Mb / dt - 0.5 * ops_.Ma + (0.5 * w_.w0) * ops_.Mc;
  } else {
    S = ops_.Mb / dt + ops_.Ma - w_.w1 * ops_.Mc;
    rhs_xi_ = ops_.Mb / dt;
  }
  llt_ = std::make_shared<Eigen::SimplicialLLT<SpMat>>(S);
  if (llt_->info() != Eigen::Success) {
    throw Error(ErrorKind::SolveFailure, "step matrix is not positive definite");
  }
}

MemoryState MemoryStepper::step(const MemoryState& s, const Vec& p_n, const Vec& p_np1) const {
  Vec rhs;
  if (scheme_ == Scheme::trapezoidal) {
    rhs = 0.5 * (p_n + p_np1) + rhs_xi_ * s.xi + (0.5 * (1.0 + w_.E)) * (ops_.Mc * s.h);
  } else {
    rhs = p_np1 + rhs_xi_ * s.xi + w_.E * (ops_.Mc * s.h);
  }
  MemoryState out;
  out.xi = llt_->solve(rhs);
  if (llt_->info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "step solve failed");
  out.h = w_.E * s.h + w_.w0 * s.xi + w_.w1 * out.xi;
  out.t = s.t + dt_;
  out.dt = dt_;
  return out;
}

MemoryState step(const EvolutionOperators& ops, const MemoryState& s, const Vec& p_n, const Vec& p_np1,
                 Scheme scheme) {
  return MemoryStepper(ops, s.dt, scheme).step(s, p_n, p_np1);
}

TransientResult solve_transient(const EvolutionOperators& ops, const Vec& xi0, const LoadProvider& load, double T,
                                int n_steps, Scheme scheme, const StrainNorm& strain_norm) {
  if (n_steps < 1 || !(T > 0.0)) throw Error(ErrorKind::ConfigError, "need T > 0 and at least one step");
  const auto start = std::chrono::steady_clock::now();
  const double dt = T / n_steps;
  const MemoryStepper stepper(ops, dt, scheme);
  TransientResult r;
  MemoryState s;
  s.t = 0.0;
  s.dt = dt;
  s.xi = xi0;
  s.h = Vec::Zero(xi0.size());
  auto record = [&](const MemoryState& st) {
    r.t.push_back(st.t);
    r.xi.push_back(st.xi);
    r.energy.push_back(st.xi.dot(ops.Ma * st.xi));
    r.strain_norm.push_back(strain_norm ? strain_norm(st.xi) : 0.0);
  };
  record(s);
  Vec p_n = load(0.0);
  for (int n = 0; n < n_steps; ++n) {
    const double t1 = (n + 1) * dt;
    const Vec p_np1 = load(t1);
    s = stepper.step(s, p_n, p_np1);
    s.t = t1;
    record(s);
    p_n = p_np1;
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

TransientResult solve_transient(const DiscreteShellSystem& sys, const Vec& xi0, const LoadProvider& load, double T,
                                int n_steps, Scheme scheme, double initial_gamma_tol) {
  const EvolutionOperators ops = evolution_operators(sys);
  StrainNorm norm = [&sys](const Vec& x) { return sys.gamma_norm(x); };
  TransientResult r = solve_transient(ops, xi0, load, T, n_steps, scheme, norm);
  if (sys.model == ShellModel::flexural && sys.gamma_norm(xi0) > initial_gamma_tol) {
    r.warnings.push_back("initial displacement is not inextensional: ||gamma(xi0)|| = " +
                         std::to_string(sys.gamma_norm(xi0)));
  }
  return r;
}

Vec steady_state(const EvolutionOperators& ops, const Vec& p) {
  const SpMat K = ops.Ma - ops.Mc / ops.k;
  Eigen::SimplicialLLT<SpMat> llt(K);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, "steady-state matrix is not SPD");
  return llt.solve(p);
}

namespace {

double kernel_integral(double k, const std::function<double(double)>& phi, double t, int n) {
  if (t <= 0.0) return 0.0;
  if (n % 2) ++n;
  const double h = t / n;
  double s = phi(0.0) * std::exp(-k * t) + phi(t);
  for (int i = 1; i < n; ++i) {
    const double si = i * h;
    s += (i % 2 ? 4.0 : 2.0) * std::exp(-k * (t - si)) * phi(si);
  }
  return s * h / 3.0;
}

}  // namespace

ClosureReport verify_closure_ode(const MaterialParams& m, const TraceTrajectory& traj,
                                 const std::vector<double>& times, int quad_intervals) {
  const MemoryConstants mc = memory_constants(m);
  const double tr = m.theta + m.rho;
  auto e33 = [&](double t) {
    return -m.theta / tr * (traj.phi(t) + mc.Lambda * kernel_integral(mc.k, traj.phi, t, quad_intervals));
  };
  auto d4 = [](const std::function<double(double)>& f, double t, double h) {
    return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
  };
  const double h = 1e-3;
  ClosureReport r;
  r.trajectory = traj.name;
  r.times = times;
  for (double t : times) {
    const double e = e33(t);
    const double de = d4(e33, t, h);
    const double dphi = d4(traj.phi, t, h);
    const double res = m.lambda * traj.phi(t) + (m.lambda + 2.0 * m.mu) * e + m.theta * dphi + tr * de;
    r.e33.push_back(e);
    r.residual.push_back(res);
    r.max_residual = std::max(r.max_residual, std::abs(res));
  }
  return r;
}

}  // namespace vshell
