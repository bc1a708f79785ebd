#pragma once

#include <stdexcept>
#include <string>

namespace fisherbound {

enum class ErrorCode {
  InvalidArgument,
  DegenerateDistribution,  // zero (or negative) second central moment
  InfeasibleMoments,       // Pearson's inequality violated beyond tolerance
  DegenerateDirection,     // E[g^2] vanishes for the requested mixing weight
  ZeroInformation,         // both moment derivatives vanish
  InvalidInformation,      // non-positive Fisher information where one is required
  ParameterDomain,
  UnsupportedAnalytic,
  InsufficientSamples,
  GridMismatch,
  OracleFailure,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fisherbound
