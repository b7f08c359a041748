#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dser {

enum class ErrorCode {
  NotAUnit,
  DescriptorMismatch,
  InvalidDescriptor,
  UnboundVariable,
  ParseError,
  NotSymmetric,
  SingularForm,
  DimensionMismatch,
  IndexOutOfRange,
  NotIsotropic,
  NotOrthogonalPair,
  WrongR,
  CertificationFailure,
  SpaceMismatch,
  DirectionMismatch,
  IndexClash,
  HypothesisViolated,
  RankTooSmall,
  LengthMismatch,
  NotNormalized,
  BudgetTooSmall,
  RewriteFailure,
  NonUnitPairing,
  PartitionOfUnityFailed,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dser
