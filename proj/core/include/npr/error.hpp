#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace npr {

/// Every failure raised by the toolkit carries one of these codes.
enum class ErrorCode {
  // mesh-core
  NonManifoldEdge,
  DegenerateTriangle,
  IndexOutOfRange,
  InvalidVertex,
  EmptyMesh,
  DuplicateName,
  UnknownProperty,
  // asset-io
  ParseError,
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  CyclicSkeleton,
  BadWeight,
  UnsupportedMaxval,
  NoLoader,
  IoError,
  // animation
  UnknownAnimation,
  TimeOutOfRange,
  BadPose,
  NotAnimated,
  // differential geometry / contours / lapped
  MissingCurvature,
  FieldLengthMismatch,
  MissingAttributes,
  InvalidSeed,
  SingularSystem,
  // render
  DimensionMismatch,
  UnboundTexture,
  InvalidConfig,
  TooFewPoints,
};

/// Coarse grouping used by the command line tool to choose an exit status.
enum class ErrorCategory { Config, Io, Numeric };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// ParseError with the offending line attached.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace npr
