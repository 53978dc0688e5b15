#include "vshell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "vshell/bench_cases.hpp"
#include "vshell/errors.hpp"

namespace vshell {

namespace {

VerifyRecord at_most(std::string name, double value, double tol) {
  return {std::move(name), value, 0.0, tol, "<=", value <= tol};
}

VerifyRecord at_least(std::string name, double value, double tol) {
  return {std::move(name), value, 0.0, tol, ">=", value >= tol};
}

VerifyRecord near(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, tol, "abs<=", std::abs(value - target) <= tol};
}

const std::vector<std::string> kShellCases{"flat_plate", "clamped_cylinder", "elliptic_cap"};
const std::vector<double> kSweepEps{1e-1, 1e-2, 1e-3};

// A(0) and B(0) component by component.
double limit_component(double l, double m, const Mat2& a, int i, int j, int k, int q) {
  const int nt = (i == 2) + (j == 2) + (k == 2) + (q == 2);
  if (nt == 4) return l + 2.0 * m;
  if (nt == 0) return l * a(i, j) * a(k, q) + m * (a(i, k) * a(j, q) + a(i, q) * a(j, k));
  if (nt == 2) {
    if (i == 2 && j == 2) return l * a(k, q);
    if (k == 2 && q == 2) return l * a(i, j);
    // one transverse index in each pair
    const int x = i == 2 ? j : i;
    const int y = k == 2 ? q : k;
    return m * a(x, y);
  }
  return 0.0;
}

void geometry_suite(VerifyReport& r) {
  for (const std::string name : {"elliptic_cap", "clamped_cylinder"}) {
    const CaseSpec c = make_case(name);
    const ExpansionReport rep = verify_expansions(*c.chart, 8, kSweepEps);
    for (const auto& rec : rep.records) {
      if (rec.exact) {
        r.records.push_back(at_most(name + "/" + rec.quantity + "/exact_deviation",
                                    *std::max_element(rec.deviation.begin(), rec.deviation.end()), 1e-13));
      } else {
        r.records.push_back(near(name + "/" + rec.quantity + "/slope", rec.slope, rec.expected_order,
                                 rep.slope_tolerance));
      }
    }
  }
  for (const auto& name : kShellCases) {
    const CaseSpec c = make_case(name);
    const ChartValidity v = check_chart(*c.chart);
    r.records.push_back(at_least(name + "/chart/min_cross_norm", v.min_cross_norm, 1e-10));
    r.records.push_back(at_least(name + "/chart/valid", v.ok() ? 1.0 : 0.0, 1.0));
  }
}

void tensors_suite(VerifyReport& r) {
  const auto mats = material_sweep(r.seed, 100);
  for (const auto& name : kShellCases) {
    const CaseSpec c = make_case(name);
    const double eps0 = find_eps0(*c.chart);
    std::vector<double> eps_list{eps0};
    for (double e : kSweepEps)
      if (e < eps0) eps_list.push_back(e);
    double min_a = std::numeric_limits<double>::infinity(), min_b = min_a, min_c = min_a;
    double min_A = min_a, min_B = min_a, sym = 0.0, closed = 0.0, equiv = 0.0;
    const auto pts = sample_lattice(c.chart->domain(), 4);
    for (const auto& m : mats) {
      for (const Vec2& y : pts) {
        const SurfaceFrame f = eval_frame(*c.chart, y);
        const Tensor2D ta = tensor2d(Tensor2DKind::a, m, f);
        const Tensor2D tb = tensor2d(Tensor2DKind::b, m, f);
        const Tensor2D tc = tensor2d(Tensor2DKind::c, m, f);
        min_a = std::min(min_a, min_voigt_eigenvalue(ta));
        min_b = std::min(min_b, min_voigt_eigenvalue(tb));
        min_c = std::min(min_c, min_voigt_eigenvalue(tc) / std::max(1.0, max_abs(tc)));
        sym = std::max({sym, symmetry_defect(ta), symmetry_defect(tb), symmetry_defect(tc)});
        // a - c/k against the elastic membrane tensor
        const Tensor2D el = elastic_equivalent_tensor(m, f);
        const Tensor2D ref = isotropic2d(f.a_up, 4.0 * m.lambda * m.mu / (m.lambda + 2.0 * m.mu), 2.0 * m.mu);
        equiv = std::max(equiv, max_abs_diff(el, ref) / max_abs(ref));
        for (const Tensor3DKind kind : {Tensor3DKind::A, Tensor3DKind::B}) {
          const Tensor3D lim = tensor3d_limit(kind, m, f);
          const double l = kind == Tensor3DKind::A ? m.lambda : m.theta;
          const double mu = kind == Tensor3DKind::A ? m.mu : 0.5 * m.rho;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k)
                for (int q = 0; q < 3; ++q)
                  closed = std::max(closed, std::abs(lim(i, j, k, q) - limit_component(l, mu, f.a_up, i, j, k, q)));
          for (double eps : eps_list) {
            for (double x3 : {-1.0, 0.0, 1.0}) {
              const Metrics3D g = eval_metrics3d(f, x3, eps);
              const Tensor3D t = tensor3d(kind, m, g);
              const double ev = min_voigt_eigenvalue(t);
              (kind == Tensor3DKind::A ? min_A : min_B) = std::min(kind == Tensor3DKind::A ? min_A : min_B, ev);
              sym = std::max(sym, symmetry_defect(t) / std::max(1.0, max_abs(t)));
            }
          }
        }
      }
    }
    r.records.push_back(at_least(name + "/a/min_eigenvalue", min_a, 0.0));
    r.records.push_back(at_least(name + "/b/min_eigenvalue", min_b, 0.0));
    r.records.push_back(at_least(name + "/c/min_eigenvalue", min_c, -1e-13));
    r.records.push_back(at_least(name + "/A/min_eigenvalue", min_A, 0.0));
    r.records.push_back(at_least(name + "/B/min_eigenvalue", min_B, 0.0));
    r.records.push_back(at_most(name + "/symmetry_defect", sym, 1e-12));
    r.records.push_back(at_most(name + "/limit_closed_form", closed, 1e-12));
    r.records.push_back(at_most(name + "/elastic_equivalence", equiv, 1e-12));

    // Rate of A(eps) -> A(0), B(eps) -> B(0) for the default material.
    const MaterialParams m = c.material;
    for (const Tensor3DKind kind : {Tensor3DKind::A, Tensor3DKind::B}) {
      std::vector<double> dev;
      for (double eps : kSweepEps) {
        double d = 0.0;
        for (const Vec2& y : pts) {
          const SurfaceFrame f = eval_frame(*c.chart, y);
          const Tensor3D lim = tensor3d_limit(kind, m, f);
          for (double x3 : {-0.75, 0.5, 1.0}) d = std::max(d, max_abs_diff(tensor3d(kind, m, eval_metrics3d(f, x3, eps)), lim));
        }
        dev.push_back(d);
      }
      const std::string label = kind == Tensor3DKind::A ? "A" : "B";
      if (*std::max_element(dev.begin(), dev.end()) <= 1e-13) {
        r.records.push_back(at_most(name + "/" + label + "/limit_deviation", *std::max_element(dev.begin(), dev.end()), 1e-13));
      } else {
        r.records.push_back(at_least(name + "/" + label + "/limit_slope", loglog_slope(kSweepEps, dev), 0.9));
      }
    }
  }
}

void closure_suite(VerifyReport& r) {
  const std::vector<TraceTrajectory> trajs{
      {"linear", [](double t) { return t; }},
      {"sine", [](double t) { return std::sin(2.0 * t); }},
      {"saturating", [](double t) { return 1.0 - std::exp(-t); }},
  };
  std::vector<double> times;
  for (int i = 1; i <= 8; ++i) times.push_back(0.5 * i);
  const std::vector<MaterialParams> all{material_preset("default"), material_preset("rubber"),
                                        material_preset("low_viscosity")};
  for (const auto& tr : trajs) {
    double worst = 0.0;
    for (const auto& m : all) {
      const ClosureReport rep = verify_closure_ode(m, tr, times);
      worst = std::max(worst, rep.max_residual);
    }
    r.records.push_back(at_most("closure/" + tr.name + "/max_residual", worst, 1e-7));
  }
}

void korn_suite(VerifyReport& r) {
  struct Item {
    std::string name;
    ShellModel model;
  };
  for (const Item& it : {Item{"elliptic_cap", ShellModel::membrane}, Item{"clamped_cylinder", ShellModel::flexural}}) {
    const CaseSpec c = make_case(it.name);
    const double k1 = korn_constant(it.model, c.chart, c.material, make_space(c, it.model, 4, 4));
    const double k2 = korn_constant(it.model, c.chart, c.material, make_space(c, it.model, 8, 8));
    r.records.push_back(at_least(it.name + "/korn/n4", k1, 1e-8));
    r.records.push_back(at_least(it.name + "/korn/n8", k2, 1e-8));
    r.records.push_back(near(it.name + "/korn/log2_ratio", std::log2(k2 / k1), 0.0, 1.0));
  }
  // Inextensional witness on the flexural spaces.
  {
    const CaseSpec c = make_case("clamped_cylinder");
    r.records.push_back(at_most("clamped_cylinder/witness", inextensional_witness(*c.chart, *make_space(c, ShellModel::flexural, 16, 16)), 1e-2));
  }
  {
    const CaseSpec c = make_case("elliptic_cap");
    const FunctionSpace2D space(c.chart->domain(), 16, 16, c.flexural_space, c.clamped, true);
    r.records.push_back(at_least("elliptic_cap/witness", inextensional_witness(*c.chart, space), 1e-1));
  }
}

void manufactured_suite(VerifyReport& r) {
  const std::vector<int> steps{100, 200, 400};
  struct Item {
    std::string name;
    ShellModel model;
  };
  for (const Item& it : {Item{"flat_plate", ShellModel::membrane}, Item{"clamped_cylinder", ShellModel::flexural},
                         Item{"manufactured_scalar", ShellModel::membrane}}) {
    for (const Scheme s : {Scheme::trapezoidal, Scheme::backward_euler}) {
      const TimeOrderResult res = manufactured_time_order(it.name, it.model, s, steps, r.seed);
      const double expected = s == Scheme::trapezoidal ? 2.0 : 1.0;
      r.records.push_back(near(it.name + "/" + to_string(s) + "/order", res.order, expected, 0.1));
    }
  }
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const VerifyRecord& v) { return v.pass; });
}

std::vector<std::string> suite_names() { return {"geometry", "tensors", "closure", "korn", "manufactured"}; }

VerifyReport run_suite(const std::string& suite, std::uint64_t seed) {
  VerifyReport r;
  r.suite = suite;
  r.seed = seed;
  if (suite == "geometry") geometry_suite(r);
  else if (suite == "tensors") tensors_suite(r);
  else if (suite == "closure") closure_suite(r);
  else if (suite == "korn") korn_suite(r);
  else if (suite == "manufactured") manufactured_suite(r);
  else throw Error(ErrorKind::UnknownSuite, "unknown suite '" + suite + "'");
  return r;
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["all_pass"] = r.all_pass();
  j["records"] = nlohmann::json::array();
  for (const auto& v : r.records) {
    j["records"].push_back({{"name", v.name},
                            {"value", v.value},
                            {"target", v.target},
                            {"tolerance", v.tolerance},
                            {"relation", v.relation},
                            {"pass", v.pass}});
  }
  return j;
}

std::vector<MaterialParams> material_sweep(std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> lam(0.0, 10.0), pos(0.1, 10.0);
  std::vector<MaterialParams> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    MaterialParams m;
    m.lambda = lam(gen);
    m.mu = pos(gen);
    m.theta = pos(gen);
    m.rho = pos(gen);
    out.push_back(m);
  }
  return out;
}

double inextensional_witness(const Chart& chart, const FunctionSpace2D& space) {
  const Eigen::MatrixXd G(gamma_gram(chart, space));
  const Eigen::MatrixXd N(gram_matrix(chart, space, {0, 0, 0}));
  return std::sqrt(std::max(0.0, min_generalized_eigenvalue(G, N)));
}

double korn_constant(ShellModel model, ChartPtr chart, const MaterialParams& m,
                     std::shared_ptr<const FunctionSpace2D> space) {
  const DiscreteShellSystem sys = assemble(model, chart, m, space, 1.0);
  if (model == ShellModel::membrane) {
    const Eigen::MatrixXd A(sys.full.a);
    const Eigen::MatrixXd N(gram_matrix(*chart, *space, {1, 1, 0}));
    return min_generalized_eigenvalue(A, N);
  }
  const Eigen::MatrixXd& Z = *sys.Z;
  const Eigen::MatrixXd A = Z.transpose() * (sys.full.a * Z);
  const Eigen::MatrixXd N = Z.transpose() * (gram_matrix(*chart, *space, {1, 1, 2}) * Z);
  return min_generalized_eigenvalue(0.5 * (A + A.transpose()), 0.5 * (N + N.transpose()));
}

TimeOrderResult manufactured_time_order(const std::string& case_name, ShellModel model, Scheme scheme,
                                        const std::vector<int>& steps, std::uint64_t seed, int n) {
  const CaseSpec c = make_case(case_name);
  EvolutionOperators ops;
  if (c.scalar) {
    ops = scalar_operators(c.material);
  } else {
    ops = evolution_operators(assemble(model, c.chart, c.material, make_space(c, model, n, n), 1.0));
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec xi_hat(ops.Ma.rows());
  for (Eigen::Index i = 0; i < xi_hat.size(); ++i) xi_hat[i] = u(gen);
  const TimeProfile profile = Sine{1.0};
  const LoadProvider load = manufactured_rhs(ops, profile, xi_hat);
  const Vec exact = profile_value(profile, c.T) * xi_hat;
  TimeOrderResult res;
  res.steps = steps;
  std::vector<double> dts;
  for (int N : steps) {
    const TransientResult tr = solve_transient(ops, Vec::Zero(xi_hat.size()), load, c.T, N, scheme);
    res.errors.push_back((tr.xi.back() - exact).norm() / exact.norm());
    dts.push_back(c.T / N);
  }
  res.order = loglog_slope(dts, res.errors);
  return res;
}

}  // namespace vshell
