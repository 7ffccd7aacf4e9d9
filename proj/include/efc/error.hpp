#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace efc {

/// Every failure raised by the library carries one of these tags so the CLI
/// can map it to an exit code and tests can assert on the kind.
enum class ErrorKind {
  SyntaxError,
  UnknownVariable,
  RingMismatch,
  UnitIdeal,
  ImproperIdeal,
  IncoherentLinearRelation,
  KernelCollapsed,
  MalformedPresentation,
  SubsetLatticeTooLarge,
  StrongnessViolated,
  StepInapplicable,
  InfiniteAutomorphismGroup,
  UnsupportedEmbedding,
  DegenerateInput,
  NotSymplectic,
  WrongRank,
  EnumerationTooLarge,
  LevelInsufficient,
  StartNotInFiber,
  IncompatibleLevels,
  InvalidModel,
};

inline std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::UnitIdeal: return "UnitIdeal";
    case ErrorKind::ImproperIdeal: return "ImproperIdeal";
    case ErrorKind::IncoherentLinearRelation: return "IncoherentLinearRelation";
    case ErrorKind::KernelCollapsed: return "KernelCollapsed";
    case ErrorKind::MalformedPresentation: return "MalformedPresentation";
    case ErrorKind::SubsetLatticeTooLarge: return "SubsetLatticeTooLarge";
    case ErrorKind::StrongnessViolated: return "StrongnessViolated";
    case ErrorKind::StepInapplicable: return "StepInapplicable";
    case ErrorKind::InfiniteAutomorphismGroup: return "InfiniteAutomorphismGroup";
    case ErrorKind::UnsupportedEmbedding: return "UnsupportedEmbedding";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::WrongRank: return "WrongRank";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::LevelInsufficient: return "LevelInsufficient";
    case ErrorKind::StartNotInFiber: return "StartNotInFiber";
    case ErrorKind::IncompatibleLevels: return "IncompatibleLevels";
    case ErrorKind::InvalidModel: return "InvalidModel";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the byte offset into the input and the token that was expected there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error(ErrorKind::SyntaxError,
              "at position " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace efc
