#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vshell/memory_stepper.hpp"
#include "vshell/shell2d.hpp"

namespace vshell {

/// One checked property: value compared against tolerance by relation
/// ("<=", ">=", "abs<=" for |value - target| <= tolerance).
struct VerifyRecord {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyRecord> records;
  bool all_pass() const;
};

std::vector<std::string> suite_names();

/// Runs geometry, tensors, closure, korn or manufactured. Throws UnknownSuite.
VerifyReport run_suite(const std::string& suite, std::uint64_t seed = 20240601);

nlohmann::json to_json(const VerifyReport& r);

/// Random material parameters: lambda in [0, 10], mu, theta, rho in [0.1, 10].
std::vector<MaterialParams> material_sweep(std::uint64_t seed, int count);

/// sqrt of the smallest generalized eigenvalue of gamma_gram against the L2
/// Gram matrix: the discrete min of ||gamma(eta)|| over ||eta||_L2 = 1.
double inextensional_witness(const Chart& chart, const FunctionSpace2D& space);

/// Smallest generalized eigenvalue of the a-form against the model norm:
/// H1 x H1 x L2 on the whole space (membrane) or H1 x H1 x H2 on the
/// inextensional kernel (flexural).
double korn_constant(ShellModel model, ChartPtr chart, const MaterialParams& m,
                     std::shared_ptr<const FunctionSpace2D> space);

/// Observed time order of a manufactured run sin(t) xi_hat on a case, from the
/// final-time relative errors at the given step counts.
struct TimeOrderResult {
  std::vector<int> steps;
  std::vector<double> errors;
  double order = 0.0;
};
TimeOrderResult manufactured_time_order(const std::string& case_name, ShellModel model, Scheme scheme,
                                        const std::vector<int>& steps, std::uint64_t seed, int n = 4);

}  // namespace vshell
