#include "okapain/parser.hpp"

#include <cctype>
#include <vector>

#include "lexer.hpp"
#include "okapain/errors.hpp"

namespace okapain::atlas {

Token Lexer::next() {
  Token t = tok_;
  advance();
  return t;
}

Token Lexer::expect_symbol(const std::string& s) {
  if (!at_symbol(s)) fail("expected '" + s + "'");
  return next();
}

Token Lexer::expect_ident() {
  if (tok_.kind != Tok::Ident) fail("expected identifier");
  return next();
}

Token Lexer::expect_keyword(const std::string& s) {
  if (!at_ident(s)) fail("expected '" + s + "'");
  return next();
}

long Lexer::expect_integer() {
  bool negative = false;
  if (at_symbol("-")) {
    next();
    negative = true;
  }
  if (tok_.kind != Tok::Int) fail("expected integer");
  long v = next().value;
  return negative ? -v : v;
}

void Lexer::fail(const std::string& message) const {
  throw ParseError(tok_.line, tok_.col, message);
}

void Lexer::advance() {
  skip_space_and_comments();
  int line = line_, col = col_;
  if (pos_ >= text_.size()) {
    tok_ = {Tok::End, "", 0, line, col};
    return;
  }
  char c = text_[pos_];
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '~'))
      bump();
    tok_ = {Tok::Ident, text_.substr(start, pos_ - start), 0, line, col};
    return;
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
    Token t{Tok::Int, text_.substr(start, pos_ - start), 0, line, col};
    t.value = std::stol(t.text);
    tok_ = t;
    return;
  }
  if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
    bump();
    bump();
    tok_ = {Tok::Sym, "->", 0, line, col};
    return;
  }
  bump();
  tok_ = {Tok::Sym, std::string(1, c), 0, line, col};
}

void Lexer::skip_space_and_comments() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') bump();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      bump();
    } else {
      break;
    }
  }
}

void Lexer::bump() {
  if (text_[pos_] == '\n') {
    ++line_;
    col_ = 1;
  } else {
    ++col_;
  }
  ++pos_;
}

namespace {

Expr parse_expr(Lexer& lex);

TwistExponent parse_exponent(Lexer& lex) {
  if (lex.peek().kind == Tok::Int) return TwistExponent{0, static_cast<int>(lex.next().value)};
  if (lex.at_ident("n")) {
    lex.next();
    return TwistExponent{1, 0};
  }
  if (lex.at_symbol("(")) {
    lex.next();
    lex.expect_keyword("n");
    TwistExponent e{1, 0};
    if (lex.at_symbol("-")) {
      lex.next();
      if (lex.peek().kind != Tok::Int) lex.fail("expected integer after n-");
      long k = lex.next().value;
      if (k > 1) lex.fail("exponent offset below -1 is not in the grammar");
      e.offset = -static_cast<int>(k);
    }
    lex.expect_symbol(")");
    return e;
  }
  lex.fail("expected exponent");
}

Expr parse_atom(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind == Tok::Ident) {
    if (t.text == "n") lex.fail("n is reserved for exponents");
    return Expr::var(cas::Variable(lex.next().text));
  }
  if (t.kind == Tok::Int) return Expr::integer(lex.next().value);
  if (lex.at_symbol("(")) {
    lex.next();
    Expr e = parse_expr(lex);
    lex.expect_symbol(")");
    return e;
  }
  if (lex.at_symbol("-")) {
    lex.next();
    // atom := '-' factor
    Expr inner = parse_atom(lex);
    if (lex.at_symbol("^")) {
      lex.next();
      inner = Expr::pow(inner, parse_exponent(lex));
    }
    return Expr::neg(inner);
  }
  lex.fail("expected expression atom");
}

Expr parse_factor(Lexer& lex) {
  Expr a = parse_atom(lex);
  if (lex.at_symbol("^")) {
    lex.next();
    return Expr::pow(a, parse_exponent(lex));
  }
  return a;
}

Expr parse_term(Lexer& lex) {
  Expr a = parse_factor(lex);
  while (lex.at_symbol("*") || lex.at_symbol("/")) {
    bool mul = lex.next().text == "*";
    Expr b = parse_factor(lex);
    a = mul ? Expr::mul(a, b) : Expr::quotient(a, b);
  }
  return a;
}

Expr parse_expr(Lexer& lex) {
  Expr a = parse_term(lex);
  while (lex.at_symbol("+") || lex.at_symbol("-")) {
    bool add = lex.next().text == "+";
    Expr b = parse_term(lex);
    a = add ? Expr::add(a, b) : Expr::sub(a, b);
  }
  return a;
}

// The 'd' of d/d<coord> terminates the coefficient expression because the
// grammar has no implicit multiplication.
cas::Variable parse_derivation(Lexer& lex) {
  Token d = lex.expect_ident();
  if (d.text != "d") throw ParseError(d.line, d.col, "expected d/d<coordinate>");
  lex.expect_symbol("/");
  Token dv = lex.expect_ident();
  if (dv.text.size() < 2 || dv.text[0] != 'd')
    throw ParseError(dv.line, dv.col, "expected d<coordinate>");
  return cas::Variable(dv.text.substr(1));
}

VectorFieldExpr parse_vf(Lexer& lex) {
  VectorFieldExpr vf;
  if (lex.peek().kind == Tok::Int && lex.peek().value == 0) {
    lex.next();
    return vf;
  }
  while (true) {
    Expr coeff = parse_expr(lex);
    cas::Variable coord = parse_derivation(lex);
    vf.parts.push_back({coeff, coord});
    if (lex.at_symbol("+")) {
      lex.next();
      continue;
    }
    break;
  }
  return vf;
}

}  // namespace

Expr parse_expression(const std::string& text) {
  Lexer lex(text);
  Expr e = parse_expr(lex);
  if (!lex.at_end()) lex.fail("trailing input after expression");
  return e;
}

VectorFieldExpr parse_vector_field(const std::string& text) {
  Lexer lex(text);
  VectorFieldExpr vf = parse_vf(lex);
  if (!lex.at_end()) lex.fail("trailing input after vector field");
  return vf;
}

cas::RationalFunction parse_rational(const std::string& text) {
  Expr e = parse_expression(text);
  if (e.depends_on_twist())
    throw ParseError(1, 1, "expression must not contain the twist symbol");
  return e.instantiate(1);
}

namespace detail {

Expr parse_expr_hook(Lexer& lex) { return parse_expr(lex); }
VectorFieldExpr parse_vf_hook(Lexer& lex) { return parse_vf(lex); }

}  // namespace detail

}  // namespace okapain::atlas
