#pragma once

#include <stdexcept>
#include <string>

namespace ttpos {

enum class Errc {
  InvalidValence,
  NotLarge,
  NonNegativeIndexRegion,
  LowComplexity,
  InconsistentSnippet,
  NotApplicable,
  OutOfRange,
  NotAdjacent,
  NotGluable,
  NotBad,
  ClosedSnippet,
  BadInput,
  BudgetExceeded,
  AuditFailure,
  ParseError,
  AdjacencyError,
  GenerationFailed,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidValence: return "InvalidValence";
    case Errc::NotLarge: return "NotLarge";
    case Errc::NonNegativeIndexRegion: return "NonNegativeIndexRegion";
    case Errc::LowComplexity: return "LowComplexity";
    case Errc::InconsistentSnippet: return "InconsistentSnippet";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::NotGluable: return "NotGluable";
    case Errc::NotBad: return "NotBad";
    case Errc::ClosedSnippet: return "ClosedSnippet";
    case Errc::BadInput: return "BadInput";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::AuditFailure: return "AuditFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::AdjacencyError: return "AdjacencyError";
    case Errc::GenerationFailed: return "GenerationFailed";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, int where = -1, int column = -1)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), where_(where), column_(column) {}
  Errc code() const { return code_; }
  // line number for parse errors, snippet index for adjacency errors
  int where() const { return where_; }
  int column() const { return column_; }

 private:
  Errc code_;
  int where_;
  int column_;
};

}  // namespace ttpos
