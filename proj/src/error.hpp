#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bis {

enum class ErrorCode {
  SyntaxError = 1,
  UnknownIdentifier,
  DomainError,
  QuadratureNonConvergence,
  NonRegularPoint,
  DegenerateFirstForm,
  NormalThirdComponentZero,
  NotUnitNormal,
  ProjectionSingular,
  GraphInversionFailure,
  NonMonotoneParamCurve,
  DomainViolation,
  ConsistencyFailure,
  IntervalOverlapsData,
  AmplitudeUnachievable,
  MixedCausalCharacter,
  NotOrthogonal,
  InvalidArgument,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::NonRegularPoint: return "NonRegularPoint";
    case ErrorCode::DegenerateFirstForm: return "DegenerateFirstForm";
    case ErrorCode::NormalThirdComponentZero: return "NormalThirdComponentZero";
    case ErrorCode::NotUnitNormal: return "NotUnitNormal";
    case ErrorCode::ProjectionSingular: return "ProjectionSingular";
    case ErrorCode::GraphInversionFailure: return "GraphInversionFailure";
    case ErrorCode::NonMonotoneParamCurve: return "NonMonotoneParamCurve";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::IntervalOverlapsData: return "IntervalOverlapsData";
    case ErrorCode::AmplitudeUnachievable: return "AmplitudeUnachievable";
    case ErrorCode::MixedCausalCharacter: return "MixedCausalCharacter";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

// Library-wide exception. `offset` is a byte offset into the source text for
// parser errors; `detail` holds the offending subexpression for domain errors.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t kNoOffset = static_cast<std::size_t>(-1);

  Error(ErrorCode code, std::string message, std::size_t offset = kNoOffset,
        std::string detail = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        offset_(offset),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::size_t offset_;
  std::string detail_;
};

}  // namespace bis
