#include "vshell/app.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "vshell/bench_cases.hpp"
#include "vshell/io.hpp"
#include "vshell/memory_stepper.hpp"
#include "vshell/solver3d.hpp"
#include "vshell/verify.hpp"

namespace vshell {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int step_count(const RunConfig& cfg, double T) {
  const double dt = cfg.dt > 0.0 ? cfg.dt : T / 200.0;
  const int n = static_cast<int>(std::lround(T / dt));
  if (n < 1) throw Error(ErrorKind::ConfigError, "dt larger than T");
  return n;
}

MaterialParams resolved_material(const RunConfig& cfg) {
  validate(cfg.params);
  return cfg.params;
}

// Forces with the time profile removed, and the profile itself.
std::pair<ScaledForces, std::function<double(double)>> split_time(const ScaledForces& f) {
  ScaledForces unit = f;
  unit.time_factor = nullptr;
  return {unit, [f](double t) { return f.time_value(t); }};
}

void export_matrices(const std::string& out, const EvolutionOperators& ops) {
  const std::string dir = join(out, "matrices");
  ensure_directory(dir);
  write_triplets(join(dir, "Ma.txt"), ops.Ma);
  write_triplets(join(dir, "Mb.txt"), ops.Mb);
  write_triplets(join(dir, "Mc.txt"), ops.Mc);
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return 2;
    case ErrorKind::UnknownCase: return 3;
    case ErrorKind::UnknownSuite: return 4;
    case ErrorKind::IoError: return 5;
    case ErrorKind::SolveFailure: return 6;
    case ErrorKind::SingularSpace: return 7;
    case ErrorKind::ThicknessTooLarge: return 8;
    case ErrorKind::DegenerateChart: return 9;
    case ErrorKind::ZeroViscosity: return 10;
    case ErrorKind::UnsupportedProfile: return 11;
  }
  return 12;
}

nlohmann::json execute_run(const RunConfig& cfg) {
  validate(cfg, false);
  const auto t0 = Clock::now();
  const CaseSpec c = make_case(cfg.case_name);
  const MaterialParams m = resolved_material(cfg);
  const double T = cfg.T > 0.0 ? cfg.T : c.T;
  const int N = step_count(cfg, T);
  const Scheme scheme = scheme_from_string(cfg.scheme);
  const double eps = cfg.eps.empty() ? 0.1 : cfg.eps.front();
  const std::string model = cfg.model.empty() ? to_string(c.default_model) : cfg.model;

  nlohmann::json s;
  s["config"] = to_json(cfg);
  s["case"] = c.name;
  s["model"] = model;
  s["eps"] = eps;
  s["T"] = T;
  s["steps"] = N;
  s["scheme"] = to_string(scheme);
  if (!c.scalar) s["eps0"] = find_eps0(*c.chart);

  EvolutionOperators ops;
  LoadProvider load;
  StrainNorm strain_norm;
  std::function<Vec(double)> exact;
  std::shared_ptr<DiscreteShellSystem> sys;
  const auto t_assemble = Clock::now();
  if (c.scalar) {
    ops = scalar_operators(m);
    const Vec xi_hat = Vec::Ones(1);
    const TimeProfile profile = Sine{1.0};
    load = manufactured_rhs(ops, profile, xi_hat);
    exact = [profile, xi_hat](double t) -> Vec { return profile_value(profile, t) * xi_hat; };
    s["dofs"] = 1;
    s["manufactured_profile"] = "sin(t)";
  } else if (model == "3d") {
    Mesh3D mesh = c.study_mesh;
    if (cfg.n1 > 0) mesh.n1 = cfg.n1;
    if (cfg.n2 > 0) mesh.n2 = cfg.n2;
    if (cfg.n3 > 0) mesh.n3 = cfg.n3;
    if (cfg.degree > 0) mesh.degree_in_plane = cfg.degree;
    if (cfg.degree3 > 0) mesh.degree_thickness = cfg.degree3;
    const auto [unit, tf] = split_time(case_forces(c, c.study_model));
    const System3D sys3 = assemble_3d(*c.chart, m, mesh, eps, unit);
    ops.Ma = sys3.A;
    ops.Mb = sys3.B;
    ops.Mc = SpMat(sys3.A.rows(), sys3.A.cols());
    ops.k = 1.0;
    const Vec F = sys3.F;
    load = [F, tf](double t) -> Vec { return tf(t) * F; };
    s["dofs"] = sys3.space->ndof();
    s["mesh"] = {{"n1", mesh.n1},
                 {"n2", mesh.n2},
                 {"n3", mesh.n3},
                 {"degree", mesh.degree_in_plane},
                 {"degree3", mesh.degree_thickness}};
    s["load_order"] = case_forces(c, c.study_model).order;
  } else {
    const ShellModel sm = shell_model_from_string(model);
    const int n1 = cfg.n1 > 0 ? cfg.n1 : c.n1;
    const int n2 = cfg.n2 > 0 ? cfg.n2 : c.n2;
    auto space = make_space(c, sm, n1, n2);
    sys = std::make_shared<DiscreteShellSystem>(assemble(sm, c.chart, m, space, eps));
    ops = evolution_operators(*sys);
    const auto [unit, tf] = split_time(case_forces(c, sm));
    const Vec p = sys->reduce(load_resultant(scaled_load(unit, eps), eps, *c.chart, *space, 0.0));
    load = [p, tf](double t) -> Vec { return tf(t) * p; };
    strain_norm = [sys](const Vec& xi) { return sys->gamma_norm(xi); };
    s["dofs"] = space->ndof();
    s["solve_size"] = sys->size();
    s["mesh"] = {{"n1", n1}, {"n2", n2}};
    s["load_order"] = case_forces(c, sm).order;
    if (sm == ShellModel::flexural) {
      s["kernel"] = {{"dimension", sys->size()}, {"threshold", sys->kernel_threshold}, {"gap", sys->kernel_gap}};
    }
  }
  const double assemble_seconds = seconds_since(t_assemble);
  if (!c.scalar && model != "3d") {
    const MemoryConstants mc = memory_constants(m);
    s["memory"] = {{"k", mc.k}, {"Lambda", mc.Lambda}};
  }

  const TransientResult tr = solve_transient(ops, Vec::Zero(ops.Ma.rows()), load, T, N, scheme, strain_norm);
  std::vector<std::vector<std::string>> rows;
  double max_err = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    std::vector<std::string> row{std::to_string(i), format_double(tr.t[i]), format_double(tr.energy[i]),
                                 format_double(tr.xi[i].norm())};
    if (!tr.strain_norm.empty()) row.push_back(format_double(tr.strain_norm[i]));
    if (exact) {
      const double e = (tr.xi[i] - exact(tr.t[i])).norm();
      max_err = std::max(max_err, e);
      row.push_back(format_double(e));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> header{"step", "t", "energy", "xi_norm"};
  if (!tr.strain_norm.empty()) header.push_back("strain_norm");
  if (exact) header.push_back("error");

  const double final_energy = tr.energy.back();
  s["final"] = {{"t", tr.t.back()}, {"energy", final_energy}, {"xi_norm", tr.xi.back().norm()}};
  s["energy_finite"] = std::isfinite(final_energy);
  if (exact) s["max_error"] = max_err;
  if (!c.scalar) {
    // Distance of the final state to the steady state under the final load.
    const Vec p = load(T);
    const Vec xinf = steady_state(ops, p);
    const double nrm = xinf.norm();
    s["steady_state_distance"] = nrm > 0.0 ? (tr.xi.back() - xinf).norm() / nrm : tr.xi.back().norm();
  }
  s["warnings"] = tr.warnings;

  ensure_directory(cfg.out);
  write_csv(join(cfg.out, "timeseries.csv"), header, rows);
  if (cfg.export_matrices) export_matrices(cfg.out, ops);
  write_text(join(cfg.out, "summary.json"), dump(s));
  nlohmann::json timings{{"assemble_seconds", assemble_seconds},
                         {"solve_seconds", tr.wall_seconds},
                         {"total_seconds", seconds_since(t0)}};
  write_text(join(cfg.out, "timings.json"), dump(timings));
  return s;
}

nlohmann::json execute_study(const RunConfig& cfg) {
  validate(cfg, true);
  const auto t0 = Clock::now();
  const CaseSpec c = make_case(cfg.case_name);
  if (c.scalar) throw Error(ErrorKind::ConfigError, "case '" + c.name + "' has no three-dimensional counterpart");
  StudyProblem p = make_study(c);
  p.material = resolved_material(cfg);
  if (!cfg.model.empty()) {
    p.model = shell_model_from_string(cfg.model);
    p.space2d = make_space(c, p.model, c.study_n2d, c.study_n2d);
    p.forces = case_forces(c, p.model);
  }
  if (cfg.n1 > 0) p.mesh3d.n1 = cfg.n1;
  if (cfg.n2 > 0) p.mesh3d.n2 = cfg.n2;
  if (cfg.n3 > 0) p.mesh3d.n3 = cfg.n3;
  if (cfg.degree > 0) p.mesh3d.degree_in_plane = cfg.degree;
  if (cfg.degree3 > 0) p.mesh3d.degree_thickness = cfg.degree3;
  if (cfg.T > 0.0) p.T = cfg.T;
  p.n_steps = cfg.dt > 0.0 ? step_count(cfg, p.T) : c.study_steps;
  p.scheme = scheme_from_string(cfg.scheme);
  const std::vector<double> eps = cfg.eps.empty() ? c.study_eps : cfg.eps;

  const std::vector<StudyRow> rows = asymptotic_study(p, eps);

  std::vector<std::vector<std::string>> csv;
  nlohmann::json jrows = nlohmann::json::array();
  nlohmann::json jtimes = nlohmann::json::array();
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StudyRow& r = rows[i];
    csv.push_back({format_double(r.eps), format_double(r.error), format_double(r.component[0]),
                   format_double(r.component[1]), format_double(r.component[2]), std::to_string(r.dofs3d),
                   std::to_string(r.dofs2d), std::to_string(p.mesh3d.n1), std::to_string(p.mesh3d.n2),
                   std::to_string(p.mesh3d.n3)});
    jrows.push_back({{"eps", r.eps},
                     {"error", r.error},
                     {"component_error", r.component},
                     {"dofs3d", r.dofs3d},
                     {"dofs2d", r.dofs2d}});
    jtimes.push_back({{"eps", r.eps}, {"seconds", r.seconds}});
    if (i > 0 && !(r.error < rows[i - 1].error)) monotone = false;
  }
  nlohmann::json s;
  s["config"] = to_json(cfg);
  s["case"] = c.name;
  s["model"] = to_string(p.model);
  s["load_order"] = p.forces.order;
  s["T"] = p.T;
  s["steps"] = p.n_steps;
  s["scheme"] = to_string(p.scheme);
  s["mesh3d"] = {{"n1", p.mesh3d.n1},
                 {"n2", p.mesh3d.n2},
                 {"n3", p.mesh3d.n3},
                 {"degree", p.mesh3d.degree_in_plane},
                 {"degree3", p.mesh3d.degree_thickness}};
  s["rows"] = jrows;
  s["monotone_decrease"] = monotone;
  s["reduction_factor"] = rows.back().error > 0.0 ? rows.front().error / rows.back().error : 0.0;

  ensure_directory(cfg.out);
  write_csv(join(cfg.out, "errors.csv"),
            {"eps", "error", "error_u1", "error_u2", "error_u3", "dofs3d", "dofs2d", "n1", "n2", "n3"}, csv);
  write_text(join(cfg.out, "summary.json"), dump(s));
  write_text(join(cfg.out, "timings.json"), dump({{"rows", jtimes}, {"total_seconds", seconds_since(t0)}}));
  return s;
}

nlohmann::json execute_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
  const VerifyReport r = run_suite(suite, seed);
  nlohmann::json j = to_json(r);
  if (!out.empty()) {
    ensure_directory(out);
    write_text(join(out, "verify_" + suite + ".json"), dump(j));
  }
  return j;
}

}  // namespace vshell
