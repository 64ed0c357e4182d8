#include "error.hpp"

namespace qgzeta {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::DuplicateEdgeId: return "DuplicateEdgeId";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::MissingVertexSpec: return "MissingVertexSpec";
    case ErrorCode::LocalDimensionMismatch: return "LocalDimensionMismatch";
    case ErrorCode::InvalidCondition: return "InvalidCondition";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::SingularG: return "SingularG";
    case ErrorCode::IllConditionedInterpolation: return "IllConditionedInterpolation";
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::VanishingOrderMismatch: return "VanishingOrderMismatch";
    case ErrorCode::VanishingPhi0: return "VanishingPhi0";
    case ErrorCode::InsufficientSubtractions: return "InsufficientSubtractions";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NegativeSpectrum: return "NegativeSpectrum";
    case ErrorCode::CompletenessFailure: return "CompletenessFailure";
    case ErrorCode::DivergentParameter: return "DivergentParameter";
    case ErrorCode::TruncationTooLarge: return "TruncationTooLarge";
    case ErrorCode::FitResidualTooLarge: return "FitResidualTooLarge";
    case ErrorCode::OrderExceedsProfile: return "OrderExceedsProfile";
  }
  return "UnknownError";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveLength:
    case ErrorCode::DanglingEndpoint:
    case ErrorCode::DuplicateEdgeId:
    case ErrorCode::EmptyGraph:
    case ErrorCode::MissingVertexSpec:
    case ErrorCode::LocalDimensionMismatch:
    case ErrorCode::InvalidCondition:
    case ErrorCode::NotSelfAdjoint:
    case ErrorCode::UnknownEdge:
    case ErrorCode::DomainError:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

}  // namespace qgzeta
