#include "npr/error.hpp"

namespace npr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::CyclicSkeleton: return "CyclicSkeleton";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
    case ErrorCode::NoLoader: return "NoLoader";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownAnimation: return "UnknownAnimation";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::BadPose: return "BadPose";
    case ErrorCode::NotAnimated: return "NotAnimated";
    case ErrorCode::MissingCurvature: return "MissingCurvature";
    case ErrorCode::FieldLengthMismatch: return "FieldLengthMismatch";
    case ErrorCode::MissingAttributes: return "MissingAttributes";
    case ErrorCode::InvalidSeed: return "InvalidSeed";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnboundTexture: return "UnboundTexture";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
  }
  return "UnknownError";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    case ErrorCode::NonManifoldEdge:
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::TruncatedFile:
    case ErrorCode::TimeOutOfRange:
    case ErrorCode::InvalidSeed:
    case ErrorCode::ParseError:
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::CyclicSkeleton:
    case ErrorCode::BadWeight:
    case ErrorCode::UnsupportedMaxval:
    case ErrorCode::NoLoader:
    case ErrorCode::UnknownAnimation:
    case ErrorCode::NotAnimated:
    case ErrorCode::InvalidConfig:
    case ErrorCode::UnboundTexture:
    case ErrorCode::DuplicateName:
    case ErrorCode::UnknownProperty:
      return ErrorCategory::Config;
    default:
      return ErrorCategory::Numeric;
  }
}

}  // namespace npr
