#include "vshell/bench_cases.hpp"

#include <cmath>

#include "vshell/errors.hpp"

namespace vshell {

MaterialParams material_preset(const std::string& name) {
  if (name == "default") return {1.0, 1.0, 1.0, 1.0};
  if (name == "rubber") return {100.0, 1.0, 1.0, 1.0};
  if (name == "low_viscosity") return {1.0, 1.0, 0.1, 0.1};
  throw Error(ErrorKind::ConfigError, "unknown material preset '" + name + "'");
}

std::vector<std::string> case_names() {
  return {"flat_plate", "clamped_cylinder", "elliptic_cap", "manufactured_scalar"};
}

namespace {

constexpr std::array<ComponentSpace, 3> kFlexuralSpace{{{true, 4, 3, true}, {true, 5, 4, true}, {true, 3, 2, true}}};

ScaledForces constant_force(int order, Vec3 f) {
  ScaledForces s;
  s.order = order;
  s.f = [f](const Vec2&, double) { return f; };
  return s;
}

}  // namespace

CaseSpec make_case(const std::string& name) {
  CaseSpec c;
  c.name = name;
  c.material = material_preset("default");
  c.flexural_space = kFlexuralSpace;
  c.membrane_space = {{{true, 2, 1, true}, {true, 2, 1, true}, {true, 2, 1, false}}};
  c.study_mesh.n1 = 8;
  c.study_mesh.n2 = 8;
  c.study_mesh.n3 = 2;
  c.study_mesh.degree_in_plane = 2;
  c.study_mesh.degree_thickness = 2;
  if (name == "flat_plate") {
    c.chart = std::make_shared<FlatChart>(Rectangle{0.0, 1.0, 0.0, 1.0});
    c.clamped = kEdgeAll;
    c.supports_membrane = c.supports_flexural = true;
    c.default_model = ShellModel::membrane;
    // eta_3 does not enter gamma on a plane.
    c.membrane_space[2].active = false;
    c.membrane_forces = constant_force(0, Vec3(1.0, 0.5, 0.0));
    c.flexural_forces = constant_force(2, Vec3(0.0, 0.0, 1.0));
    c.study_model = ShellModel::membrane;
    c.study_mesh.n1 = c.study_mesh.n2 = 16;
  } else if (name == "elliptic_cap") {
    c.chart = std::make_shared<ParaboloidChart>(1.0, Rectangle{-0.5, 0.5, -0.5, 0.5});
    c.clamped = kEdgeAll;
    c.supports_membrane = true;
    c.default_model = ShellModel::membrane;
    c.membrane_forces = constant_force(0, Vec3(0.0, 0.0, 1.0));
    c.study_model = ShellModel::membrane;
  } else if (name == "clamped_cylinder") {
    c.chart = std::make_shared<CylinderChart>(1.0, Rectangle{0.0, 1.0, 0.0, 1.0});
    c.clamped = kEdgeLeft;
    c.supports_flexural = true;
    c.default_model = ShellModel::flexural;
    c.flexural_forces = constant_force(2, Vec3(0.0, 0.0, 1.0));
    c.study_model = ShellModel::flexural;
    c.study_mesh.degree_in_plane = 3;
  } else if (name == "manufactured_scalar") {
    c.chart = std::make_shared<FlatChart>(Rectangle{0.0, 1.0, 0.0, 1.0});
    c.scalar = true;
    c.supports_membrane = true;
    c.default_model = ShellModel::membrane;
  } else {
    throw Error(ErrorKind::UnknownCase, "unknown case '" + name + "'");
  }
  c.study_mesh.clamped = c.clamped;
  return c;
}

std::shared_ptr<FunctionSpace2D> make_space(const CaseSpec& c, ShellModel model, int n1, int n2) {
  if (c.scalar) throw Error(ErrorKind::ConfigError, "case '" + c.name + "' has no shell discretization");
  if (model == ShellModel::membrane && !c.supports_membrane) {
    throw Error(ErrorKind::ConfigError, "case '" + c.name + "' does not define a membrane problem");
  }
  if (model == ShellModel::flexural && !c.supports_flexural) {
    throw Error(ErrorKind::ConfigError, "case '" + c.name + "' does not define a flexural problem");
  }
  const bool flex = model == ShellModel::flexural;
  return std::make_shared<FunctionSpace2D>(c.chart->domain(), n1, n2, flex ? c.flexural_space : c.membrane_space,
                                           c.clamped, flex);
}

const ScaledForces& case_forces(const CaseSpec& c, ShellModel model) {
  return model == ShellModel::membrane ? c.membrane_forces : c.flexural_forces;
}

StudyProblem make_study(const CaseSpec& c) {
  StudyProblem p;
  p.name = c.name;
  p.chart = c.chart;
  p.material = c.material;
  p.model = c.study_model;
  p.space2d = make_space(c, c.study_model, c.study_n2d, c.study_n2d);
  p.mesh3d = c.study_mesh;
  p.forces = case_forces(c, c.study_model);
  p.T = c.T;
  p.n_steps = c.study_steps;
  return p;
}

EvolutionOperators scalar_operators(const MaterialParams& m) {
  EvolutionOperators ops;
  auto one = [](double v) {
    SpMat s(1, 1);
    s.insert(0, 0) = v;
    s.makeCompressed();
    return s;
  };
  ops.Ma = one(1.0);
  ops.Mb = one(1.0);
  ops.Mc = one(0.5);
  ops.k = memory_constants(m).k;
  return ops;
}

double profile_value(const TimeProfile& p, double t) {
  return std::visit(
      [t](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          double v = 0.0;
          for (std::size_t m = q.coeffs.size(); m-- > 0;) v = v * t + q.coeffs[m];
          return v;
        } else if constexpr (std::is_same_v<T, Sine>) {
          return std::sin(q.omega * t);
        } else if constexpr (std::is_same_v<T, Cosine>) {
          return std::cos(q.omega * t);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return std::exp(-q.beta * t);
        } else {
          return q.value(t);
        }
      },
      p);
}

double profile_derivative(const TimeProfile& p, double t) {
  return std::visit(
      [t](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          double v = 0.0;
          for (std::size_t m = q.coeffs.size(); m-- > 1;) v = v * t + m * q.coeffs[m];
          return v;
        } else if constexpr (std::is_same_v<T, Sine>) {
          return q.omega * std::cos(q.omega * t);
        } else if constexpr (std::is_same_v<T, Cosine>) {
          return -q.omega * std::sin(q.omega * t);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return -q.beta * std::exp(-q.beta * t);
        } else {
          return q.derivative(t);
        }
      },
      p);
}

double kernel_integral(const TimeProfile& p, double k, double t) {
  const double ekt = std::exp(-k * t);
  return std::visit(
      [&](const auto& q) -> double {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          double I = (1.0 - ekt) / k, tm = 1.0, v = q.coeffs.empty() ? 0.0 : q.coeffs[0] * I;
          for (std::size_t m = 1; m < q.coeffs.size(); ++m) {
            tm *= t;
            I = tm / k - static_cast<double>(m) / k * I;
            v += q.coeffs[m] * I;
          }
          return v;
        } else if constexpr (std::is_same_v<T, Sine>) {
          const double w = q.omega;
          return (k * std::sin(w * t) - w * std::cos(w * t) + w * ekt) / (k * k + w * w);
        } else if constexpr (std::is_same_v<T, Cosine>) {
          const double w = q.omega;
          return (k * std::cos(w * t) + w * std::sin(w * t) - k * ekt) / (k * k + w * w);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (q.beta == k) return t * ekt;
          return (std::exp(-q.beta * t) - ekt) / (k - q.beta);
        } else {
          throw Error(ErrorKind::UnsupportedProfile, "no closed-form kernel integral for a custom profile");
        }
      },
      p);
}

LoadProvider manufactured_rhs(const EvolutionOperators& ops, const TimeProfile& profile, const Vec& xi_hat) {
  // Fail early for profiles without a closed form.
  kernel_integral(profile, ops.k, 0.0);
  const Vec a = ops.Ma * xi_hat, b = ops.Mb * xi_hat, c = ops.Mc * xi_hat;
  const double k = ops.k;
  return [a, b, c, k, profile](double t) -> Vec {
    return profile_value(profile, t) * a + profile_derivative(profile, t) * b - kernel_integral(profile, k, t) * c;
  };
}

}  // namespace vshell
