#pragma once

#include <string>

#include <json.hpp>

#include "vshell/config.hpp"
#include "vshell/errors.hpp"

namespace vshell {

/// Exit status of the command-line tool for an error category.
int exit_code(ErrorKind kind);

/// Transient run of one case (2D membrane, 2D flexural or 3D). Writes
/// summary.json, timeseries.csv, timings.json and, on request, the system
/// matrices as triplet files under cfg.out. Returns the summary.
nlohmann::json execute_run(const RunConfig& cfg);

/// Asymptotic study of one case. Writes summary.json, errors.csv and
/// timings.json under cfg.out. Returns the summary.
nlohmann::json execute_study(const RunConfig& cfg);

/// Runs a verification suite and writes verify_<suite>.json under out when
/// out is not empty. Returns the report.
nlohmann::json execute_verify(const std::string& suite, std::uint64_t seed, const std::string& out);

}  // namespace vshell
