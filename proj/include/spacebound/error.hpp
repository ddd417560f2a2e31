#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spacebound {

enum class ErrorCode {
  UnboundVariable,
  BoxUnordered,
  UnknownTimePoint,
  NotOrdered,
  CyclicOrder,
  DimensionMismatch,
  NegativeMargin,
  NotImplicationForm,
  NotAChain,
  OffsetOutOfRange,
  UnmappedNode,
  NegationUnsupported,
  UngroundedSymbol,
  NodeNotGeometrized,
  AlreadyOwned,
  ModeMismatch,
  ClassificationMismatch,
  EmptyInitial,
  InvalidAutomaton,
  StepNonPositive,
  SyntaxError,
  DuplicateName,
  UnknownVersion,
  UnknownDefinition,
  ParameterOutOfRange,
  UnknownPass,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// stable and is what tests and the CLI dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string expected_;
};

}  // namespace spacebound
