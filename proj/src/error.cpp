#include "chipfire/error.hpp"

namespace chipfire {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyVertexSet: return "EmptyVertexSet";
    case ErrorCode::InvalidVertexName: return "InvalidVertexName";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NonpositiveMultiplicity: return "NonpositiveMultiplicity";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DuplicateAssignment: return "DuplicateAssignment";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::VertexNotInS: return "VertexNotInS";
    case ErrorCode::QInS: return "QInS";
    case ErrorCode::EmptyS: return "EmptyS";
    case ErrorCode::NegativeConfiguration: return "NegativeConfiguration";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::ConflictingArc: return "ConflictingArc";
    case ErrorCode::PartialOrientation: return "PartialOrientation";
    case ErrorCode::CeilingExceeded: return "CeilingExceeded";
    case ErrorCode::LoopCeiling: return "LoopCeiling";
    case ErrorCode::Cancelled: return "Cancelled";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::KindMismatch: return "KindMismatch";
  }
  return "Unknown";
}

}  // namespace chipfire
