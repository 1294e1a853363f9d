#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mg {

enum class ErrorCode {
  AtomCountOutOfRange,
  UnknownAtomInConstant,
  EmptySetAsIndividual,
  ForeignIndividual,
  ArityMismatch,
  UnknownFunctor,
  UnknownConstant,
  UnboundVariable,
  DuplicateConstant,
  SyntaxError,
  QuantifierBlowup,
  NonemptyLibraryRequired,
  DimensionMismatch,
  DimensionRequired1,
  NonpositiveScale,
  NonpositiveRadius,
  DuplicateLabel,
  UnknownLabel,
  UnknownDefinition,
  ResourceLimit,
  BadFile,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::AtomCountOutOfRange: return "AtomCountOutOfRange";
    case ErrorCode::UnknownAtomInConstant: return "UnknownAtomInConstant";
    case ErrorCode::EmptySetAsIndividual: return "EmptySetAsIndividual";
    case ErrorCode::ForeignIndividual: return "ForeignIndividual";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownFunctor: return "UnknownFunctor";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DuplicateConstant: return "DuplicateConstant";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::QuantifierBlowup: return "QuantifierBlowup";
    case ErrorCode::NonemptyLibraryRequired: return "NonemptyLibraryRequired";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionRequired1: return "DimensionRequired1";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownDefinition: return "UnknownDefinition";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::BadFile: return "BadFile";
  }
  return "UnknownError";
}

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Byte range [begin, end) into the source text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Parse error carrying the offending span and what was expected there.
class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& expected, const std::string& what)
      : Error(ErrorCode::SyntaxError, what), span_(span), expected_(expected) {}

  SourceSpan span() const { return span_; }
  const std::string& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::string expected_;
};

}  // namespace mg
