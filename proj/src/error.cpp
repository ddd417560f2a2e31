#include "spacebound/error.hpp"

namespace spacebound {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::BoxUnordered: return "BoxUnordered";
    case ErrorCode::UnknownTimePoint: return "UnknownTimePoint";
    case ErrorCode::NotOrdered: return "NotOrdered";
    case ErrorCode::CyclicOrder: return "CyclicOrder";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeMargin: return "NegativeMargin";
    case ErrorCode::NotImplicationForm: return "NotImplicationForm";
    case ErrorCode::NotAChain: return "NotAChain";
    case ErrorCode::OffsetOutOfRange: return "OffsetOutOfRange";
    case ErrorCode::UnmappedNode: return "UnmappedNode";
    case ErrorCode::NegationUnsupported: return "NegationUnsupported";
    case ErrorCode::UngroundedSymbol: return "UngroundedSymbol";
    case ErrorCode::NodeNotGeometrized: return "NodeNotGeometrized";
    case ErrorCode::AlreadyOwned: return "AlreadyOwned";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::ClassificationMismatch: return "ClassificationMismatch";
    case ErrorCode::EmptyInitial: return "EmptyInitial";
    case ErrorCode::InvalidAutomaton: return "InvalidAutomaton";
    case ErrorCode::StepNonPositive: return "StepNonPositive";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownVersion: return "UnknownVersion";
    case ErrorCode::UnknownDefinition: return "UnknownDefinition";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::UnknownPass: return "UnknownPass";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t col, const std::string& expected)
    : Error(ErrorCode::SyntaxError,
            std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected),
      line_(line),
      col_(col),
      expected_(expected) {}

}  // namespace spacebound
