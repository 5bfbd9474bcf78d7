#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chipfire {

enum class ErrorCode {
  // graph construction
  EmptyVertexSet,
  InvalidVertexName,
  DuplicateVertex,
  LoopEdge,
  UnknownVertex,
  NonpositiveMultiplicity,
  Disconnected,
  InvalidParameter,
  // divisors and scripts
  DuplicateAssignment,
  GraphMismatch,
  EnumerationTooLarge,
  // configurations
  VertexNotInS,
  QInS,
  EmptyS,
  NegativeConfiguration,
  // orientations
  NotAnEdge,
  ConflictingArc,
  PartialOrientation,
  // search
  CeilingExceeded,
  LoopCeiling,
  Cancelled,
  // io
  SyntaxError,
  SemanticError,
  KindMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this exception. `location()`
/// carries a TXT line ("line 3") or a JSON pointer ("/edges/2/1") when the
/// failure comes from parsing, and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(code), location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace chipfire
