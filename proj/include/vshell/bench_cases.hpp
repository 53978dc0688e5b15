#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "vshell/chart.hpp"
#include "vshell/constitutive.hpp"
#include "vshell/memory_stepper.hpp"
#include "vshell/shell2d.hpp"
#include "vshell/solver3d.hpp"

namespace vshell {

/// Named material parameter sets: "default" (all 1), "rubber" (lambda >> mu)
/// and "low_viscosity" (theta = rho = 0.1). Throws ConfigError.
MaterialParams material_preset(const std::string& name);

struct CaseSpec {
  std::string name;
  ChartPtr chart;
  EdgeSet clamped = kEdgeAll;
  bool supports_membrane = false;
  bool supports_flexural = false;
  bool scalar = false;  // 1x1 operators instead of a shell discretization
  ShellModel default_model = ShellModel::membrane;
  MaterialParams material;
  ScaledForces membrane_forces;  // order 0
  ScaledForces flexural_forces;  // order 2
  std::array<ComponentSpace, 3> membrane_space{};
  std::array<ComponentSpace, 3> flexural_space{};
  double T = 2.0;
  int n1 = 8, n2 = 8;
  // Asymptotic study defaults.
  ShellModel study_model = ShellModel::membrane;
  Mesh3D study_mesh;
  int study_n2d = 16;
  int study_steps = 100;
  std::vector<double> study_eps{0.2, 0.1, 0.05};
};

/// flat_plate, clamped_cylinder, elliptic_cap or manufactured_scalar.
/// Throws UnknownCase.
CaseSpec make_case(const std::string& name);
std::vector<std::string> case_names();

/// Throws ConfigError if the case does not support the model.
std::shared_ptr<FunctionSpace2D> make_space(const CaseSpec& c, ShellModel model, int n1, int n2);
const ScaledForces& case_forces(const CaseSpec& c, ShellModel model);

/// Study set-up for a case; mesh and time grid from the case defaults.
StudyProblem make_study(const CaseSpec& c);

/// Operators of the manufactured_scalar case: Ma = 1, Mb = 1, Mc = 1/2 and
/// k from the material.
EvolutionOperators scalar_operators(const MaterialParams& m);

/// Scalar time profiles of a manufactured solution xi*(t) = phi(t) xi_hat.
struct Polynomial {
  std::vector<double> coeffs;  // sum coeffs[m] t^m
};
struct Sine {
  double omega = 1.0;
};
struct Cosine {
  double omega = 1.0;
};
struct Exponential {
  double beta = 1.0;  // exp(-beta t)
};
struct CustomProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};
using TimeProfile = std::variant<Polynomial, Sine, Cosine, Exponential, CustomProfile>;

double profile_value(const TimeProfile& p, double t);
double profile_derivative(const TimeProfile& p, double t);

/// int_0^t exp(-k (t - s)) phi(s) ds in closed form. Throws UnsupportedProfile
/// for custom profiles.
double kernel_integral(const TimeProfile& p, double k, double t);

/// p(t) = phi Ma xi_hat + phi' Mb xi_hat - (int e^{-k(t-s)} phi) Mc xi_hat.
LoadProvider manufactured_rhs(const EvolutionOperators& ops, const TimeProfile& profile, const Vec& xi_hat);

}  // namespace vshell
