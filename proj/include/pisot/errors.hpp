#pragma once

#include <stdexcept>
#include <string>

namespace pisot {

enum class ErrorCode {
  ParseError,
  NotSquarefree,
  ZeroElement,
  ZeroConstantTerm,
  InternalError,
  NotAUnit,
  DependentUnits,
  BadTorsion,
  WrongRank,
  RankZero,
  CertificateMismatch,
  Infeasible,
  UnboundedRegion,
  SingularSystem,
  NoFallbackProvided,
  PrecisionCeiling,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pisot
