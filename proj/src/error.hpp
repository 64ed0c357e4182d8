#pragma once

#include <stdexcept>
#include <string>

namespace qgzeta {

enum class ErrorCode {
  // input / validation
  NonPositiveLength,
  DanglingEndpoint,
  DuplicateEdgeId,
  EmptyGraph,
  MissingVertexSpec,
  LocalDimensionMismatch,
  InvalidCondition,
  NotSelfAdjoint,
  UnknownEdge,
  DomainError,
  ParseError,
  // numerical
  PoleHit,
  SingularG,
  IllConditionedInterpolation,
  ZeroLeadingCoefficient,
  VanishingOrderMismatch,
  VanishingPhi0,
  InsufficientSubtractions,
  QuadratureFailure,
  NegativeSpectrum,
  CompletenessFailure,
  DivergentParameter,
  TruncationTooLarge,
  FitResidualTooLarge,
  OrderExceedsProfile,
};

const char* error_name(ErrorCode code) noexcept;

// True for errors caused by the caller's input rather than by the numerics.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qgzeta
