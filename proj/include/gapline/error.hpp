#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapline {

enum class ErrorKind {
  InvalidSize,
  Dimension,
  Structure,
  Domain,
  Parse,
  Solver,
  Precondition,
  SizeGuard,
  PathValidity,
  TransformUndefined,
  Consistency,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSize: return "invalid-size";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::SizeGuard: return "size-guard";
    case ErrorKind::PathValidity: return "path-validity";
    case ErrorKind::TransformUndefined: return "transform-undefined";
    case ErrorKind::Consistency: return "consistency";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// front-ends can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the eigensolver cannot reach the requested residual.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double best_residual)
      : Error(ErrorKind::Solver, what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace detail
}  // namespace gapline
