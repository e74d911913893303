#pragma once

#include <map>
#include <optional>
#include <string>

#include "okapain/polynomial.hpp"

namespace okapain::cas {

// Quotient of polynomials in canonical form: gcd(num, den) is a unit and the
// denominator's leading coefficient is 1, so equality is representation
// equality.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(Polynomial::constant(1)) {}
  static RationalFunction of(const Polynomial& num, const Polynomial& den);
  static RationalFunction constant(const Rational& c) { return RationalFunction(Polynomial::constant(c)); }
  static RationalFunction constant(long c) { return constant(Rational(c)); }
  static RationalFunction variable(const Variable& v) { return RationalFunction(Polynomial::variable(v)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;  // DivisionByZero
  RationalFunction pow(int k) const;  // negative k requires nonzero
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction differentiate(const Variable& v) const;
  RationalFunction substitute(const std::map<Variable, RationalFunction>& bindings) const;
  Rational evaluate(const std::map<Variable, Rational>& point) const;
  // Substitute v = 0; nullopt when the denominator vanishes identically there.
  std::optional<RationalFunction> try_at_zero(const Variable& v) const;

  std::vector<Variable> variables() const;
  bool contains(const Variable& v) const;

  std::string render() const;

private:
  Polynomial num_, den_;
};

RationalFunction substitute(const Polynomial& p,
                            const std::map<Variable, RationalFunction>& bindings);

}  // namespace okapain::cas
