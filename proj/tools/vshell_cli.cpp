#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "vshell/app.hpp"
#include "vshell/config.hpp"
#include "vshell/errors.hpp"
#include "vshell/verify.hpp"

namespace {

// Flags shared by run and study, stored as text and applied as config keys
// on top of the --config file.
struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool export_matrices = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key=value config file");
    for (const char* key : {"case", "model", "eps", "material", "lambda", "mu", "theta", "rho", "n1", "n2", "n3",
                            "degree", "degree3", "dt", "T", "scheme", "out", "seed"}) {
      app->add_option(std::string("--") + key, values[key]);
    }
    app->add_flag("--export-matrices", export_matrices, "write Ma, Mb, Mc as triplet files");
  }

  vshell::RunConfig resolve(CLI::App* app) const {
    vshell::RunConfig cfg;
    if (!config_path.empty()) vshell::parse_config_file(cfg, config_path);
    // The preset first, so explicit coefficients override it.
    if (app->count("--material") > 0) vshell::apply_setting(cfg, "material", values.at("material"));
    for (const auto& [key, value] : values) {
      if (key != "material" && app->count("--" + key) > 0) vshell::apply_setting(cfg, key, value);
    }
    if (export_matrices) cfg.export_matrices = true;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Viscoelastic shell solver"};
  app.require_subcommand(1);

  Overrides run_opts, study_opts;
  CLI::App* run = app.add_subcommand("run", "transient run of a case");
  run_opts.attach(run);
  CLI::App* study = app.add_subcommand("study", "3D to 2D asymptotic study of a case");
  study_opts.attach(study);

  std::string suite, verify_out;
  std::uint64_t seed = 20240601;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "geometry, tensors, closure, korn or manufactured")->required();
  verify->add_option("--seed", seed);
  verify->add_option("--out", verify_out, "directory for verify_<suite>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const auto s = vshell::execute_run(run_opts.resolve(run));
      std::cout << "run " << s["case"].get<std::string>() << ": final energy "
                << s["final"]["energy"].get<double>() << "\n";
    } else if (*study) {
      const auto s = vshell::execute_study(study_opts.resolve(study));
      for (const auto& r : s["rows"]) {
        std::cout << "eps " << r["eps"].get<double>() << "  error " << r["error"].get<double>() << "\n";
      }
    } else if (*verify) {
      const auto j = vshell::execute_verify(suite, seed, verify_out);
      std::cout << j.dump(2) << "\n";
      return j["all_pass"].get<bool>() ? 0 : 1;
    }
  } catch (const vshell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vshell::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 12;
  }
  return 0;
}
