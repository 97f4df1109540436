#include "circpoly/error.hpp"

namespace circpoly {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NearPoleDegeneracy: return "NearPoleDegeneracy";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::IdenticalCircles: return "IdenticalCircles";
    case ErrorCode::Coaxial: return "Coaxial";
    case ErrorCode::NoRealOrthoCircle: return "NoRealOrthoCircle";
    case ErrorCode::PointOnBoundary: return "PointOnBoundary";
    case ErrorCode::LinesIntersect: return "LinesIntersect";
    case ErrorCode::LinesParallel: return "LinesParallel";
    case ErrorCode::IdealVertex: return "IdealVertex";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::IncompatibleChains: return "IncompatibleChains";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotBlackEdgeCongruent: return "NotBlackEdgeCongruent";
    case ErrorCode::EdgeCoupled: return "EdgeCoupled";
    case ErrorCode::Unitary: return "Unitary";
    case ErrorCode::FaceCoaxial: return "FaceCoaxial";
    case ErrorCode::FaceNotCPlanar: return "FaceNotCPlanar";
    case ErrorCode::ThreeConsecutiveCoaxial: return "ThreeConsecutiveCoaxial";
    case ErrorCode::StillInconsistent: return "StillInconsistent";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::TangentPair: return "TangentPair";
    case ErrorCode::FocusNotInDisk: return "FocusNotInDisk";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NoLabeledEdge: return "NoLabeledEdge";
    case ErrorCode::LemmaViolated: return "LemmaViolated";
    case ErrorCode::ValidationMissing: return "ValidationMissing";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::PlaneMissesBall: return "PlaneMissesBall";
    case ErrorCode::VertexInsideBall: return "VertexInsideBall";
    case ErrorCode::ParamsOutOfRange: return "ParamsOutOfRange";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
  }
  return "Unknown";
}

}  // namespace circpoly
