#pragma once
// Syntax tree of the ideal-expression language.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ccl::dsl {

struct SourceLoc {
  int line = 1;
  int column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
  Integer,   // text holds the digits
  Name,      // text holds the identifier
  String,    // text holds the unescaped contents
  Call,      // text is the callee, children the arguments
  Tuple,     // "(a, b, ...)" or "()": generators of an ideal
  List,      // "[a, b, ...]"
  Negate,    // children[0]
  Binary,    // text is one of + - * /, children[0] op children[1]
  Power,     // children[0] ^ children[1]
  RingLiteral,  // Fp(children[0])[names]
};

struct Expr {
  ExprKind kind;
  SourceLoc loc;
  std::string text;
  std::vector<ExprPtr> children;
  std::vector<std::string> names;
};

/// `ring|ideal|poly|class|list|let NAME = expr;` or `expr;`.
struct Statement {
  SourceLoc loc;
  /// Binding keyword, empty for a bare command.
  std::string keyword;
  std::string name;
  ExprPtr expr;
};

struct Program {
  std::vector<Statement> statements;
};

}  // namespace ccl::dsl
