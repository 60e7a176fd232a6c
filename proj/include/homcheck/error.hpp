#pragma once

#include <stdexcept>
#include <string>

namespace homcheck {

enum class ErrorKind {
  InvalidAlgebra,
  InvalidArgument,
  AlgebraMismatch,
  IndexOutOfRange,
  NotHermitian,
  NotUCP,
  NotADensity,
  NotAProjection,
  ZeroProjection,
  NotTracePreserving,
  NotSingleBlock,
  NotATensorAlgebra,
  MultiplicityTooSmall,
  NoUnitalEmbedding,
  InternalSpectralError,
  InternalInconsistency,
  ParseError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUCP: return "NotUCP";
    case ErrorKind::NotADensity: return "NotADensity";
    case ErrorKind::NotAProjection: return "NotAProjection";
    case ErrorKind::ZeroProjection: return "ZeroProjection";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotSingleBlock: return "NotSingleBlock";
    case ErrorKind::NotATensorAlgebra: return "NotATensorAlgebra";
    case ErrorKind::MultiplicityTooSmall: return "MultiplicityTooSmall";
    case ErrorKind::NoUnitalEmbedding: return "NoUnitalEmbedding";
    case ErrorKind::InternalSpectralError: return "InternalSpectralError";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace homcheck
