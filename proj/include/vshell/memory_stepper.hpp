#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "vshell/constitutive.hpp"
#include "vshell/shell2d.hpp"

namespace vshell {

/// Matrices of Mb xi' + Ma xi - Mc h = p, h' = xi - k h.
struct EvolutionOperators {
  SpMat Ma, Mb, Mc;
  double k = 1.0;
};

/// Operators of an assembled shell system; k from its material.
EvolutionOperators evolution_operators(const DiscreteShellSystem& sys);

enum class Scheme { backward_euler, trapezoidal };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// xi_n, and h_n = int_0^{t_n} exp(-k (t_n - s)) xi(s) ds.
struct MemoryState {
  double t = 0.0;
  Vec xi;
  Vec h;
  double dt = 0.0;
};

/// Exact kernel integral over one step of the linear interpolant of xi:
///   h_{n+1} = E h_n + w0 xi_n + w1 xi_{n+1},  E = exp(-k dt).
/// For the backward Euler scheme w0 = 0 and w1 = (1 - E)/k.
struct HistoryWeights {
  double E = 1.0, w0 = 0.0, w1 = 0.0;
};
HistoryWeights history_weights(double k, double dt, Scheme scheme);

using LoadProvider = std::function<Vec(double)>;

/// Reusable one-step map; the step matrix is factorized once.
///
/// Trapezoidal:
///   S = Mb/dt + Ma/2 - (w1/2) Mc
///   S xi_{n+1} = (p_n + p_{n+1})/2 + (Mb/dt - Ma/2) xi_n + Mc ((1 + E) h_n + w0 xi_n)/2
/// Backward Euler:
///   S = Mb/dt + Ma - w1 Mc
///   S xi_{n+1} = p_{n+1} + Mb xi_n/dt + E Mc h_n
/// S is symmetric; the factorization throws SolveFailure if it is not
/// positive definite.
class MemoryStepper {
 public:
  MemoryStepper(EvolutionOperators ops, double dt, Scheme scheme);

  MemoryState step(const MemoryState& s, const Vec& p_n, const Vec& p_np1) const;
  const HistoryWeights& weights() const { return w_; }
  double dt() const { return dt_; }

 private:
  EvolutionOperators ops_;
  double dt_;
  Scheme scheme_;
  HistoryWeights w_;
  SpMat rhs_xi_;  // matrix multiplying xi_n
  std::shared_ptr<Eigen::SimplicialLLT<SpMat>> llt_;
};

/// Single step with a freshly factorized step matrix.
MemoryState step(const EvolutionOperators& ops, const MemoryState& s, const Vec& p_n, const Vec& p_np1,
                 Scheme scheme);

struct TransientResult {
  std::vector<double> t;
  std::vector<Vec> xi;
  std::vector<double> energy;       // xi^T Ma xi
  std::vector<double> strain_norm;  // ||gamma(xi)|| when available
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

using StrainNorm = std::function<double(const Vec&)>;

/// Integrates from t = 0 with h(0) = 0 over N uniform steps on [0, T].
TransientResult solve_transient(const EvolutionOperators& ops, const Vec& xi0, const LoadProvider& load, double T,
                                int n_steps, Scheme scheme, const StrainNorm& strain_norm = {});

/// As above for an assembled shell. For the flexural model a warning is
/// recorded when ||gamma(xi0)|| exceeds initial_gamma_tol.
TransientResult solve_transient(const DiscreteShellSystem& sys, const Vec& xi0, const LoadProvider& load, double T,
                                int n_steps, Scheme scheme, double initial_gamma_tol = 1e-10);

/// Solves (Ma - Mc/k) xi = p.
Vec steady_state(const EvolutionOperators& ops, const Vec& p);

/// Scalar trace trajectory phi(t) = a^{ab} e_ab(t) with phi(0) = 0.
struct TraceTrajectory {
  std::string name;
  std::function<double(double)> phi;
};

struct ClosureReport {
  std::string trajectory;
  std::vector<double> times;
  std::vector<double> e33;
  std::vector<double> residual;
  double max_residual = 0.0;
};

/// Evaluates e33(t) = -theta/(theta+rho) (phi + Lambda int_0^t exp(-k(t-s)) phi ds)
/// by composite Simpson quadrature, differentiates it by central differences
/// and reports the residual of
///   lambda phi + (lambda+2mu) e33 + theta phi' + (theta+rho) e33' = 0.
ClosureReport verify_closure_ode(const MaterialParams& m, const TraceTrajectory& traj,
                                 const std::vector<double>& times, int quad_intervals = 40000);

}  // namespace vshell
