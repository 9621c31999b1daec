#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morsegraph {

enum class ErrorKind {
  InvalidEdge,
  VertexOutOfRange,
  InvalidPair,
  InvalidQuad,
  InvalidParameter,
  InvalidWitness,
  OutOfDomain,
  CapacityExceeded,
  BudgetExceeded,
  TooLarge,
  IoError,
  ConfigError,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::InvalidPair: return "InvalidPair";
    case ErrorKind::InvalidQuad: return "InvalidQuad";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the sweep harness in particular) can tag records without parsing
/// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace morsegraph
