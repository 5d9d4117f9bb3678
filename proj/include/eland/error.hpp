#pragma once

#include <stdexcept>
#include <string>

namespace eland {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  domain,             // a precondition on the inputs is violated
  assumption,         // the potential violates a structural hypothesis
  numeric,            // an iteration failed to converge
  insufficient_data,  // a fit window holds too few usable points
  bracket,            // a bisection bracket does not straddle the transition
  budget,             // the requested mesh exceeds the node budget
  monotonicity,       // a monotone iteration lost its ordering
  undefined,          // a diagnostic is undefined for the given input
  usage,              // malformed configuration or command line
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numeric failure carrying the last residual seen by the iteration.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double last_residual)
      : Error(ErrorKind::numeric, what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace eland
