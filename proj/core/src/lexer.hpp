// Internal tokenization for expression and atlas-document parsing.
#pragma once

#include <string>

#include "okapain/expr.hpp"

namespace okapain::atlas {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long value = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token next();

  bool at_symbol(const std::string& s) const { return tok_.kind == Tok::Sym && tok_.text == s; }
  bool at_ident(const std::string& s) const { return tok_.kind == Tok::Ident && tok_.text == s; }
  bool at_end() const { return tok_.kind == Tok::End; }

  Token expect_symbol(const std::string& s);
  Token expect_ident();
  Token expect_keyword(const std::string& s);
  long expect_integer();

  [[noreturn]] void fail(const std::string& message) const;

private:
  void advance();
  void skip_space_and_comments();
  void bump();

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

namespace detail {
Expr parse_expr_hook(Lexer& lex);
VectorFieldExpr parse_vf_hook(Lexer& lex);
}  // namespace detail

}  // namespace okapain::atlas
