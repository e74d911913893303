#include "okapain/rational_function.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "okapain/errors.hpp"

namespace okapain::cas {

RationalFunction RationalFunction::of(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero();
  RationalFunction r;
  if (num.is_zero()) return r;
  Polynomial g = Polynomial::gcd(num, den);
  r.num_ = *Polynomial::try_divide(num, g);
  r.den_ = *Polynomial::try_divide(den, g);
  Rational lc = r.den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return of(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return of(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return of(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw DivisionByZero();
  return of(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::pow(int k) const {
  if (k == 0) return constant(1);
  if (k < 0) {
    if (is_zero()) throw DivisionByZero();
    return of(den_.pow(-k), num_.pow(-k));
  }
  return of(num_.pow(k), den_.pow(k));
}

RationalFunction RationalFunction::differentiate(const Variable& v) const {
  // Quotient rule, normalized.
  Polynomial dn = num_.differentiate(v);
  Polynomial dd = den_.differentiate(v);
  return of(dn * den_ - num_ * dd, den_ * den_);
}

RationalFunction substitute(const Polynomial& p,
                            const std::map<Variable, RationalFunction>& bindings) {
  RationalFunction sum;
  for (const auto& [m, c] : p.terms()) {
    RationalFunction prod = RationalFunction::constant(c);
    for (const auto& [v, e] : m.factors()) {
      auto it = bindings.find(v);
      RationalFunction base =
          it != bindings.end() ? it->second : RationalFunction::variable(v);
      prod = prod * base.pow(e);
    }
    sum = sum + prod;
  }
  return sum;
}

RationalFunction RationalFunction::substitute(
    const std::map<Variable, RationalFunction>& bindings) const {
  RationalFunction n = cas::substitute(num_, bindings);
  RationalFunction d = cas::substitute(den_, bindings);
  if (d.is_zero()) throw SubstitutionPole(den_.render());
  return n / d;
}

Rational RationalFunction::evaluate(const std::map<Variable, Rational>& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw EvaluationPole(den_.render());
  return num_.evaluate(point) / d;
}

std::optional<RationalFunction> RationalFunction::try_at_zero(const Variable& v) const {
  Polynomial d0 = den_.at_zero(v);
  if (d0.is_zero()) return std::nullopt;
  return of(num_.at_zero(v), d0);
}

std::vector<Variable> RationalFunction::variables() const {
  std::set<int> seen;
  std::vector<Variable> out;
  for (const auto& p : {num_, den_})
    for (const auto& v : p.variables())
      if (seen.insert(v.id()).second) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

bool RationalFunction::contains(const Variable& v) const {
  return num_.contains(v) || den_.contains(v);
}

std::string RationalFunction::render() const {
  if (den_.is_one()) return num_.render();
  std::ostringstream out;
  bool paren_num = num_.terms().size() > 1;
  // A denominator stays bare only when it is a single power of a single
  // variable with unit coefficient; anything else would re-associate under
  // the left-to-right '/' of the grammar.
  bool paren_den = !(den_.terms().size() == 1 && den_.leading_coefficient() == 1 &&
                     den_.leading_monomial().factors().size() <= 1);
  if (paren_num)
    out << "(" << num_.render() << ")";
  else
    out << num_.render();
  out << "/";
  if (paren_den)
    out << "(" << den_.render() << ")";
  else
    out << den_.render();
  return out.str();
}

}  // namespace okapain::cas
