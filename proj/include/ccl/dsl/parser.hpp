#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "ccl/dsl/ast.hpp"

namespace ccl::dsl {

/// A located syntax error. `expected` lists the token kinds that would have
/// been accepted at that position.
struct Diagnostic {
  SourceLoc loc;
  std::string message;
  std::set<std::string> expected;

  /// "NAME:LINE:COL: error: MESSAGE (expected ...)".
  std::string format(std::string_view source_name) const;
};

using ParseResult = std::variant<Program, Diagnostic>;

/// Parses a whole program. Never returns a partial Program.
ParseResult parse_program(std::string_view source);

/// Parses a single expression with no trailing semicolon.
std::variant<ExprPtr, Diagnostic> parse_expression(std::string_view source);

/// Binding keywords accepted at the start of a statement.
bool is_binding_keyword(std::string_view word);

}  // namespace ccl::dsl
