#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okapain/variable.hpp"

namespace okapain::cas {

// Exact rational scalar of unbounded size.
using Rational = mpq_class;

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& q);

// Product of variable powers, exponents > 0, factors sorted by canonical
// variable order (most significant first).
class Monomial {
public:
  Monomial() = default;
  static Monomial unit() { return Monomial(); }
  static Monomial of(const Variable& v, int exp = 1);

  const std::vector<std::pair<Variable, int>>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  int total_degree() const;
  int degree_of(const Variable& v) const;
  bool contains(const Variable& v) const { return degree_of(v) > 0; }

  Monomial times(const Monomial& o) const;
  // Componentwise divisibility; result of division when it exists.
  std::optional<Monomial> divided_by(const Monomial& o) const;

  // Graded lex: total degree first, then earlier variables dominate.
  int compare(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return compare(o) == 0; }

  std::string render() const;

private:
  std::vector<std::pair<Variable, int>> factors_;
};

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return a.compare(b) > 0;
  }
};

// Sparse multivariate polynomial over Q in canonical form: no zero
// coefficients, terms ordered leading-first by graded lex.
class Polynomial {
public:
  using TermMap = std::map<Monomial, Rational, MonomialGreater>;

  Polynomial() = default;  // zero
  static Polynomial constant(const Rational& c);
  static Polynomial constant(long c) { return constant(Rational(c)); }
  static Polynomial variable(const Variable& v);
  static Polynomial term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rational constant_value() const;  // requires is_constant()

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(int k) const;  // k >= 0
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  int total_degree() const;  // -1 for zero
  int degree_in(const Variable& v) const;
  const Monomial& leading_monomial() const;     // requires nonzero
  const Rational& leading_coefficient() const;  // requires nonzero
  std::vector<Variable> variables() const;
  bool contains(const Variable& v) const;

  // Coefficient of v^k, a polynomial free of v.
  Polynomial coefficient_of(const Variable& v, int k) const;
  // Substitute v = 0.
  Polynomial at_zero(const Variable& v) const;
  Polynomial differentiate(const Variable& v) const;
  // All variables must be bound.
  Rational evaluate(const std::map<Variable, Rational>& point) const;

  // Exact division: f / g when g divides f, otherwise nullopt.
  static std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g);
  // Gcd up to units, returned integer-primitive with positive leading coeff.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);
  // Integer-primitive associate: rational multiple with integer coefficients,
  // content 1 and positive leading coefficient.
  Polynomial primitive_associate() const;

  std::string render() const;

private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

}  // namespace okapain::cas
