#pragma once

#include <memory>
#include <string>
#include <vector>

#include "okapain/rational_function.hpp"

namespace okapain::atlas {

// Exponent of the atlas expression grammar: either a plain integer or n+b
// with b >= -1 (covers the n and n-1 exponents of the twist-parametrized
// generator tables).
struct TwistExponent {
  int n_coef = 0;  // 0 or 1
  int offset = 0;
  bool depends_on_twist() const { return n_coef != 0; }
  int instantiate(int n) const { return n_coef * n + offset; }
  std::string render() const;
  bool operator==(const TwistExponent&) const = default;
};

// Immutable expression tree for atlas documents. Exponents may carry the
// formal twist symbol; everything else is concrete.
class Expr {
public:
  enum class Kind { Add, Sub, Mul, Div, Neg, Pow, Var, Int };

  Expr();  // integer 0
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr quotient(Expr a, Expr b);
  static Expr neg(Expr a);
  static Expr pow(Expr base, TwistExponent e);
  static Expr var(const cas::Variable& v);
  static Expr integer(long value);

  bool depends_on_twist() const;
  // Concrete rational function at twist n. NegativeExponentAfterInstantiation
  // if an exponent lands below zero.
  cas::RationalFunction instantiate(int n) const;
  std::vector<cas::Variable> variables() const;

  std::string render() const;

  struct Node;

private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Vector field written in a chart: sum of coefficient * d/d(coordinate).
struct VectorFieldExpr {
  std::vector<std::pair<Expr, cas::Variable>> parts;  // empty = zero field

  bool is_zero() const { return parts.empty(); }
  bool depends_on_twist() const;
  std::vector<cas::Variable> variables() const;
  std::string render() const;
};

}  // namespace okapain::atlas
