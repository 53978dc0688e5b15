#pragma once

#include <stdexcept>
#include <string>

namespace vshell {

enum class ErrorKind {
  DegenerateChart,
  ThicknessTooLarge,
  ZeroViscosity,
  SingularSpace,
  SolveFailure,
  UnknownCase,
  UnsupportedProfile,
  UnknownSuite,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind kind);

/// Exception carrying one of the library's error categories. The CLI maps the
/// category onto its exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vshell
