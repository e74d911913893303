#pragma once

#include <string>

#include "okapain/expr.hpp"

namespace okapain::atlas {

// Expression grammar shared by atlas documents and tests:
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := atom ('^' exponent)?
//   atom     := identifier | integer | '(' expr ')' | '-' factor
//   exponent := integer | 'n' | '(' 'n' '-' integer ')'
// The identifier n is reserved for the formal twist exponent.
Expr parse_expression(const std::string& text);

// `0` or `<expr> d/d<coord> (+ <expr> d/d<coord>)*`
VectorFieldExpr parse_vector_field(const std::string& text);

// Twist-free convenience: parse and instantiate.
cas::RationalFunction parse_rational(const std::string& text);

}  // namespace okapain::atlas
