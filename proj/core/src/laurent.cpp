#include "okapain/laurent.hpp"

#include <sstream>

#include "okapain/errors.hpp"

namespace okapain::cas {

RationalFunction LaurentPolynomial::resum() const {
  RationalFunction sum;
  RationalFunction z = RationalFunction::variable(var);
  for (const auto& [d, c] : coeffs) sum = sum + c * z.pow(d);
  return sum;
}

std::string LaurentPolynomial::render() const {
  if (coeffs.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (!first) out << " + ";
    out << "(" << it->second.render() << ")";
    if (it->first != 0) out << "*" << var.name() << "^" << it->first;
    first = false;
  }
  return out.str();
}

LaurentPolynomial laurent_normal_form(const RationalFunction& f, const Variable& v,
                                      const std::vector<Polynomial>& allowed_denominators) {
  LaurentPolynomial out(v);
  if (f.is_zero()) return out;

  // Peel declared unit denominators, then the v-power, off the denominator.
  Polynomial den = f.den();
  Polynomial unit_den = Polynomial::constant(1);
  for (const auto& g : allowed_denominators) {
    if (g.is_constant()) continue;
    while (true) {
      auto q = Polynomial::try_divide(den, g);
      if (!q) break;
      den = *q;
      unit_den = unit_den * g;
    }
  }
  int vpow = 0;
  Polynomial vpoly = Polynomial::variable(v);
  while (true) {
    auto q = Polynomial::try_divide(den, vpoly);
    if (!q) break;
    den = *q;
    ++vpow;
  }
  if (den.contains(v)) throw NotLaurent(f.den().render());

  // Split the numerator by v-degree; the v-free residual denominator and the
  // unit factors stay inside each coefficient.
  const Polynomial& num = f.num();
  int top = num.degree_in(v);
  Polynomial base_den = den * unit_den;
  for (int d = 0; d <= top; ++d) {
    Polynomial nd = num.coefficient_of(v, d);
    if (nd.is_zero()) continue;
    RationalFunction c = RationalFunction::of(nd, base_den);
    if (!c.is_zero()) out.coeffs.emplace(d - vpow, c);
  }
  return out;
}

}  // namespace okapain::cas
