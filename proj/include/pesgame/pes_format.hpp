#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pesgame/pes.hpp"

namespace pesgame {

struct SourceSpan {
  int line = 0;
  int column = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan at, const std::string& message)
      : std::runtime_error("line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " +
                           message),
        at_(at) {}
  SourceSpan where() const { return at_; }

 private:
  SourceSpan at_;
};

struct Declaration {
  enum class Kind { Event, Cause, Conflict, Terminating };
  Kind kind = Kind::Event;
  SourceSpan span;
  /// Event: {id, label}. Cause/Conflict: {from, to}.
  std::vector<std::string> args;
  /// Terminating only.
  TerminationPolicy::Kind termination = TerminationPolicy::Kind::Maximal;
  std::vector<std::vector<std::string>> terminating_sets;
};

struct PesDocument {
  std::string name;
  SourceSpan name_span;
  std::vector<Declaration> declarations;
};

/// Syntax only: checks the grammar, forward references, duplicate events and
/// the single-terminating-line rule.
PesDocument parse_document(std::string_view text);

RawPes to_raw(const PesDocument& doc);

/// parse_document followed by validate_pes.
Pes parse_pes(std::string_view text, const Caps& caps = {});

/// Canonical text for p; parse_pes(print_pes(p)) == p.
std::string print_pes(const Pes& p);

}  // namespace pesgame
