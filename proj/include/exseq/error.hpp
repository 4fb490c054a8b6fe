#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exseq {

enum class ErrorKind {
  InvalidPrime,
  InvalidLocalizationSet,
  DimensionMismatch,
  InconsistentStratum,
  NotAComplex,
  NotContained,
  DegreeBoundTooSmall,
  FieldRequired,
  ZeroModule,
  InvalidModel,
  IndexOutOfRange,
  EmptySpace,
  UnsupportedModelRing,
  NotExact,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::InvalidLocalizationSet: return "InvalidLocalizationSet";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InconsistentStratum: return "InconsistentStratum";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorKind::FieldRequired: return "FieldRequired";
    case ErrorKind::ZeroModule: return "ZeroModule";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptySpace: return "EmptySpace";
    case ErrorKind::UnsupportedModelRing: return "UnsupportedModelRing";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace exseq
