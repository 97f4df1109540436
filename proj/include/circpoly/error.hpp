#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circpoly {

enum class ErrorCode {
  DegeneratePair,
  NearPoleDegeneracy,
  DegenerateTriple,
  IdenticalCircles,
  Coaxial,
  NoRealOrthoCircle,
  PointOnBoundary,
  LinesIntersect,
  LinesParallel,
  IdealVertex,
  NotProper,
  NonConvex,
  IncompatibleChains,
  HypothesisViolated,
  NotBlackEdgeCongruent,
  EdgeCoupled,
  Unitary,
  FaceCoaxial,
  FaceNotCPlanar,
  ThreeConsecutiveCoaxial,
  StillInconsistent,
  NotAdjacent,
  TangentPair,
  FocusNotInDisk,
  DegenerateFace,
  NoLabeledEdge,
  LemmaViolated,
  ValidationMissing,
  NotConvex,
  PlaneMissesBall,
  VertexInsideBall,
  ParamsOutOfRange,
  RejectionBudgetExceeded,
  ParseError,
  ValidationFailed,
  UnknownVertex,
};

std::string_view error_name(ErrorCode code);

// Every geometric or input failure surfaces as this one type; `code` is the
// machine-readable part and what() carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace circpoly
