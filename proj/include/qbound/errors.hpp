#pragma once

#include <stdexcept>
#include <string>

namespace qbound {

// Stable error codes. The CLI maps errors raised while parsing and
// validating input files to exit 2 and errors raised during computation
// to exit 3; the code itself does not carry the exit status.
enum class ErrorCode {
  NonOrthonormal,
  IncompleteBasis,
  NotPsd,
  NotCompleteToIdentity,
  DimensionMismatch,
  BadFactorization,
  BadParameter,
  NotHermitian,
  NegativeComponent,
  PreconditionFailed,
  NotMonotone,
  KOutOfRange,
  PoolTooLarge,
  BadSpectrum,
  NotProjective,
  NonPositiveBound,
  SettingCountMismatch,
  LengthMismatch,
  DTooLarge,
  DimTooLarge,
  TooManyStrategies,
  RangeError,
  NoConvergence,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace qbound
