#pragma once

#include <map>
#include <string>
#include <vector>

#include "okapain/rational_function.hpp"

namespace okapain::cas {

// Finite Laurent polynomial in one distinguished variable. Coefficients are
// rational functions of the remaining variables, except that declared unit
// denominators (chart localizations like t+x9) may keep the distinguished
// variable inside them unexpanded.
struct LaurentPolynomial {
  Variable var;
  std::map<int, RationalFunction> coeffs;  // exponent -> nonzero coefficient

  explicit LaurentPolynomial(const Variable& v) : var(v) {}

  bool is_zero() const { return coeffs.empty(); }
  int min_degree() const { return coeffs.empty() ? 0 : coeffs.begin()->first; }
  int max_degree() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

  // Sum of coeff * var^d, the inverse of laurent_normal_form.
  RationalFunction resum() const;

  bool operator==(const LaurentPolynomial& o) const {
    return var == o.var && coeffs == o.coeffs;
  }

  std::string render() const;
};

// Write f as a finite Laurent polynomial in v. The denominator of f must be
// a monomial in v times declared allowed denominators times a v-free part;
// otherwise NotLaurent.
LaurentPolynomial laurent_normal_form(const RationalFunction& f, const Variable& v,
                                      const std::vector<Polynomial>& allowed_denominators);

}  // namespace okapain::cas
