#include "ccl/dsl/parser.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace ccl::dsl {

namespace {

enum class Tok { Integer, Name, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Integer:
      return "integer '" + t.text + "'";
    case Tok::Name:
      return "name '" + t.text + "'";
    case Tok::String:
      return "string";
    case Tok::Punct:
      return "'" + t.text + "'";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

struct SyntaxError {
  Diagnostic diag;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceLoc at = loc_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", at});
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          digits += advance();
        out.push_back({Tok::Integer, digits, at});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
          name += advance();
        out.push_back({Tok::Name, name, at});
      } else if (c == '"') {
        out.push_back({Tok::String, string_literal(at), at});
      } else if (std::string_view("()[],;=+-*/^").find(c) != std::string_view::npos) {
        out.push_back({Tok::Punct, std::string(1, advance()), at});
      } else {
        std::string shown = static_cast<unsigned char>(c) < 0x80 && std::isprint(c)
                                ? std::string(1, c)
                                : "byte 0x" + hex(static_cast<unsigned char>(c));
        throw SyntaxError{{at, "unexpected character " + shown, {}}};
      }
    }
  }

 private:
  static std::string hex(unsigned char b) {
    const char* digits = "0123456789abcdef";
    return {digits[b >> 4], digits[b & 15]};
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      // UTF-8 continuation bytes do not start a new column.
      ++loc_.column;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string string_literal(SourceLoc at) {
    advance();
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      char c = advance();
      if (c == '\n') throw SyntaxError{{at, "unterminated string", {"'\"'"}}};
      if (c == '\\') {
        if (pos_ >= src_.size()) break;
        char e = advance();
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += c;
      }
    }
    if (pos_ >= src_.size()) throw SyntaxError{{at, "unterminated string", {"'\"'"}}};
    advance();
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  SourceLoc loc_;
};

const std::set<std::string> kExprStart{"integer", "name", "string", "'('", "'['", "'-'"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program prog;
    while (peek().kind != Tok::End) prog.statements.push_back(statement());
    return prog;
  }

  ExprPtr lone_expression() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail({"end of input", "'+'", "'-'", "'*'", "'/'", "'^'"});
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool is_punct(const Token& t, char c) const {
    return t.kind == Tok::Punct && t.text[0] == c;
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError{{t.loc, "unexpected " + describe(t), std::move(expected)}};
  }

  const Token& expect(char c) {
    if (!is_punct(peek(), c)) fail({std::string("'") + c + "'"});
    return take();
  }

  std::string expect_name() {
    if (peek().kind != Tok::Name) fail({"name"});
    return take().text;
  }

  Statement statement() {
    Statement st;
    st.loc = peek().loc;
    if (peek().kind == Tok::Name && is_binding_keyword(peek().text) &&
        peek(1).kind == Tok::Name && is_punct(peek(2), '=')) {
      st.keyword = take().text;
      st.name = take().text;
      take();
      st.expr = expr();
    } else if (peek().kind == Tok::Name &&
               (peek().text == "print" || peek().text == "save" || peek().text == "load") &&
               !is_punct(peek(1), '(') && !is_punct(peek(1), ';')) {
      // Keyword form: `print T;` is `print(T);`.
      Token head = take();
      st.expr = std::make_shared<Expr>(
          Expr{ExprKind::Call, head.loc, head.text, {expr()}, {}});
    } else {
      st.expr = expr();
    }
    if (!is_punct(peek(), ';')) {
      std::set<std::string> exp{"';'", "'+'", "'-'", "'*'", "'/'", "'^'"};
      fail(exp);
    }
    take();
    return st;
  }

  ExprPtr expr() {
    ExprPtr lhs = product();
    while (is_punct(peek(), '+') || is_punct(peek(), '-')) {
      Token op = take();
      ExprPtr rhs = product();
      lhs = std::make_shared<Expr>(Expr{ExprKind::Binary, op.loc, op.text, {lhs, rhs}, {}});
    }
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (is_punct(peek(), '*') || is_punct(peek(), '/')) {
      Token op = take();
      ExprPtr rhs = unary();
      lhs = std::make_shared<Expr>(Expr{ExprKind::Binary, op.loc, op.text, {lhs, rhs}, {}});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_punct(peek(), '-')) {
      Token op = take();
      return std::make_shared<Expr>(Expr{ExprKind::Negate, op.loc, "-", {unary()}, {}});
    }
    ExprPtr base = primary();
    if (is_punct(peek(), '^')) {
      Token op = take();
      ExprPtr exponent = primary();
      if (is_punct(peek(), '^')) {
        throw SyntaxError{{peek().loc, "chained '^' is ambiguous; add parentheses", {"';'"}}};
      }
      return std::make_shared<Expr>(Expr{ExprKind::Power, op.loc, "^", {base, exponent}, {}});
    }
    return base;
  }

  std::vector<ExprPtr> comma_list(char close) {
    std::vector<ExprPtr> items;
    if (is_punct(peek(), close)) {
      take();
      return items;
    }
    for (;;) {
      items.push_back(expr());
      if (is_punct(peek(), ',')) {
        take();
        continue;
      }
      if (!is_punct(peek(), close)) {
        fail({"','", std::string("'") + close + "'", "'+'", "'-'", "'*'", "'/'", "'^'"});
      }
      take();
      return items;
    }
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer: {
        Token tok = take();
        return std::make_shared<Expr>(Expr{ExprKind::Integer, tok.loc, tok.text, {}, {}});
      }
      case Tok::String: {
        Token tok = take();
        return std::make_shared<Expr>(Expr{ExprKind::String, tok.loc, tok.text, {}, {}});
      }
      case Tok::Name: {
        Token tok = take();
        if (tok.text == "Fp" && is_punct(peek(), '(')) return ring_literal(tok);
        if (is_punct(peek(), '(')) {
          take();
          auto args = comma_list(')');
          return std::make_shared<Expr>(Expr{ExprKind::Call, tok.loc, tok.text, args, {}});
        }
        return std::make_shared<Expr>(Expr{ExprKind::Name, tok.loc, tok.text, {}, {}});
      }
      case Tok::Punct:
        if (is_punct(t, '(')) {
          Token open = take();
          auto items = comma_list(')');
          if (items.size() == 1) return items[0];
          return std::make_shared<Expr>(Expr{ExprKind::Tuple, open.loc, "", items, {}});
        }
        if (is_punct(t, '[')) {
          Token open = take();
          auto items = comma_list(']');
          return std::make_shared<Expr>(Expr{ExprKind::List, open.loc, "", items, {}});
        }
        break;
      case Tok::End:
        break;
    }
    fail(kExprStart);
  }

  ExprPtr ring_literal(const Token& head) {
    take();
    ExprPtr prime = expr();
    expect(')');
    expect('[');
    std::vector<std::string> names{expect_name()};
    while (is_punct(peek(), ',')) {
      take();
      names.push_back(expect_name());
    }
    if (!is_punct(peek(), ']')) fail({"','", "']'"});
    take();
    return std::make_shared<Expr>(
        Expr{ExprKind::RingLiteral, head.loc, "Fp", {prime}, std::move(names)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Diagnostic::format(std::string_view source_name) const {
  std::string out = std::string(source_name) + ":" + std::to_string(loc.line) + ":" +
                    std::to_string(loc.column) + ": error: " + message;
  if (!expected.empty()) {
    out += " (expected ";
    bool first = true;
    for (const auto& e : expected) {
      out += (first ? "" : ", ") + e;
      first = false;
    }
    out += ")";
  }
  return out;
}

bool is_binding_keyword(std::string_view word) {
  static constexpr std::array<std::string_view, 6> kWords{"ring", "ideal", "poly",
                                                          "class", "list", "let"};
  for (auto w : kWords)
    if (w == word) return true;
  return false;
}

ParseResult parse_program(std::string_view source) {
  try {
    Parser p(Lexer(source).run());
    return p.program();
  } catch (const SyntaxError& e) {
    return e.diag;
  }
}

std::variant<ExprPtr, Diagnostic> parse_expression(std::string_view source) {
  try {
    Parser p(Lexer(source).run());
    return p.lone_expression();
  } catch (const SyntaxError& e) {
    return e.diag;
  }
}

}  // namespace ccl::dsl
