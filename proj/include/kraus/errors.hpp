// Error codes and the exception type thrown across the library.
#ifndef KRAUS_ERRORS_HPP
#define KRAUS_ERRORS_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace kraus {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NotPositive,
  TraceNotOne,
  EigenFailure,
  DimMismatch,
  BadRank,
  EmptyList,
  NotTracePreserving,
  NotUnitary,
  BadIsometry,
  NotCP,
  NotTP,
  CompletionFailure,
  BadFactorization,
  BadCoefficients,
  NotKinematicallyEquivalent,
  StrategyInapplicable,
  InvalidArgument,
  ParseError,
};

const char* error_code_name(ErrorCode code);

// Single exception type; `code()` discriminates, `residual()` carries the
// measured violation when one exists (NaN otherwise).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what,
        double residual = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        residual_(residual) {}

  ErrorCode code() const { return code_; }
  double residual() const { return residual_; }

private:
  ErrorCode code_;
  double residual_;
};

} // namespace kraus

#endif
