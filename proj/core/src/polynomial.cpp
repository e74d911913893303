#include "okapain/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "okapain/errors.hpp"

namespace okapain::cas {

Rational rational_from_string(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

// ---- Monomial ----

Monomial Monomial::of(const Variable& v, int exp) {
  Monomial m;
  if (exp != 0) m.factors_.push_back({v, exp});
  return m;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

int Monomial::degree_of(const Variable& v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first.compare(b->first) < 0)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first.compare(a->first) < 0) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& o) const {
  Monomial r;
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end()) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end()) {
      return std::nullopt;
    } else if (a->first.compare(b->first) < 0) {
      r.factors_.push_back(*a++);
    } else if (a->first == b->first) {
      if (a->second < b->second) return std::nullopt;
      if (a->second > b->second) r.factors_.push_back({a->first, a->second - b->second});
      ++a;
      ++b;
    } else {
      return std::nullopt;  // o has a variable this lacks
    }
  }
  return r;
}

int Monomial::compare(const Monomial& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Lexicographic on the canonical variable order: scan both factor lists,
  // the monomial with the higher exponent on the earliest variable wins.
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    int c = a->first.compare(b->first);
    if (c < 0) return 1;   // this has an earlier variable with positive exponent
    if (c > 0) return -1;
    if (a->second != b->second) return a->second < b->second ? -1 : 1;
    ++a;
    ++b;
  }
  if (a != factors_.end()) return 1;
  if (b != o.factors_.end()) return -1;
  return 0;
}

std::string Monomial::render() const {
  if (factors_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, e] : factors_) {
    if (!first) out << "*";
    out << v.name();
    if (e != 1) out << "^" << e;
    first = false;
  }
  return out.str();
}

// ---- Polynomial ----

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term(Monomial::unit(), c);
  return p;
}

Polynomial Polynomial::variable(const Variable& v) {
  Polynomial p;
  p.add_term(Monomial::of(v), Rational(1));
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_unit() && terms_.begin()->second == 1;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  assert(is_constant());
  return terms_.begin()->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::pow(int k) const {
  assert(k >= 0);
  Polynomial r = constant(1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.total_degree();
}

int Polynomial::degree_in(const Variable& v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_of(v));
  return d;
}

const Monomial& Polynomial::leading_monomial() const {
  assert(!terms_.empty());
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  assert(!terms_.empty());
  return terms_.begin()->second;
}

std::vector<Variable> Polynomial::variables() const {
  std::set<int> seen;
  std::vector<Variable> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      if (seen.insert(v.id()).second) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

bool Polynomial::contains(const Variable& v) const {
  for (const auto& [m, c] : terms_)
    if (m.contains(v)) return true;
  return false;
}

Polynomial Polynomial::coefficient_of(const Variable& v, int k) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    if (m.degree_of(v) != k) continue;
    auto rest = m.divided_by(Monomial::of(v, k));
    r.add_term(*rest, c);
  }
  return r;
}

Polynomial Polynomial::at_zero(const Variable& v) const {
  Polynomial r;
  for (const auto& [m, c] : terms_)
    if (!m.contains(v)) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::differentiate(const Variable& v) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    int e = m.degree_of(v);
    if (e == 0) continue;
    auto rest = m.divided_by(Monomial::of(v, 1));
    r.add_term(*rest, c * e);
  }
  return r;
}

Rational Polynomial::evaluate(const std::map<Variable, Rational>& point) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw UnboundVariable(v.name());
      Rational p(1);
      for (int i = 0; i < e; ++i) p *= it->second;
      prod *= p;
    }
    sum += prod;
  }
  return sum;
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) return Polynomial();
  Polynomial rem = f;
  Polynomial quot;
  const Monomial& lg = g.leading_monomial();
  const Rational& cg = g.leading_coefficient();
  while (!rem.is_zero()) {
    auto q = rem.leading_monomial().divided_by(lg);
    if (!q) return std::nullopt;
    Rational qc = rem.leading_coefficient() / cg;
    Polynomial t = Polynomial::term(*q, qc);
    quot = quot + t;
    rem = rem - t * g;
  }
  return quot;
}

Polynomial Polynomial::primitive_associate() const {
  if (is_zero()) return *this;
  mpz_class den_lcm(1), num_gcd(0);
  for (const auto& [m, c] : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (leading_coefficient() < 0) scale = -scale;
  return scaled(scale);
}

namespace {

// Univariate view of a polynomial in one main variable, coefficients being
// polynomials in the remaining variables.
std::vector<Polynomial> coeffs_in(const Polynomial& p, const Variable& v) {
  int d = p.degree_in(v);
  std::vector<Polynomial> out(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) out[k] = p.coefficient_of(v, k);
  return out;
}

Polynomial from_coeffs(const std::vector<Polynomial>& cs, const Variable& v) {
  Polynomial r;
  for (size_t k = 0; k < cs.size(); ++k)
    r = r + cs[k] * Polynomial::term(Monomial::of(v, static_cast<int>(k)), Rational(1));
  return r;
}

int uni_degree(const std::vector<Polynomial>& cs) {
  for (int k = static_cast<int>(cs.size()) - 1; k >= 0; --k)
    if (!cs[k].is_zero()) return k;
  return -1;
}

// Pseudo-remainder of a by b in (R[rest])[v], b nonzero.
std::vector<Polynomial> pseudo_rem(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  int db = uni_degree(b);
  const Polynomial& lb = b[db];
  int da = uni_degree(a);
  while (da >= db && da >= 0) {
    // a = lb*a - lead(a)*v^(da-db)*b, drops the degree of a.
    std::vector<Polynomial> next(std::max(a.size(), b.size() + a.size()),
                                 Polynomial());
    next.resize(a.size());
    Polynomial la = a[da];
    for (int k = 0; k <= da; ++k) next[k] = lb * a[k];
    for (int k = 0; k <= db; ++k)
      next[k + da - db] = next[k + da - db] - la * b[k];
    a = std::move(next);
    int nd = uni_degree(a);
    assert(nd < da);
    da = nd;
  }
  a.resize(da + 1 > 0 ? da + 1 : 0);
  return a;
}

Polynomial content_in(const std::vector<Polynomial>& cs) {
  Polynomial g;
  for (const auto& c : cs) g = Polynomial::gcd(g, c);
  return g;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.primitive_associate();
  if (b.is_zero()) return a.primitive_associate();
  if (a.is_constant() || b.is_constant()) return constant(1);

  // Main variable: earliest canonical variable occurring in either operand.
  Variable v = a.variables().front();
  {
    Variable vb = b.variables().front();
    if (vb < v) v = vb;
  }
  if (!a.contains(v))
    return gcd(a, content_in(coeffs_in(b, v)));
  if (!b.contains(v))
    return gcd(content_in(coeffs_in(a, v)), b);

  auto ua = coeffs_in(a, v);
  auto ub = coeffs_in(b, v);
  Polynomial ca = content_in(ua);
  Polynomial cb = content_in(ub);
  Polynomial cont = gcd(ca, cb);

  auto strip = [](std::vector<Polynomial> cs, const Polynomial& c) {
    for (auto& p : cs) p = *try_divide(p, c);
    return cs;
  };
  ua = strip(std::move(ua), ca);
  ub = strip(std::move(ub), cb);

  // Primitive PRS on the primitive parts.
  if (uni_degree(ua) < uni_degree(ub)) std::swap(ua, ub);
  while (true) {
    auto r = pseudo_rem(ua, ub);
    int dr = uni_degree(r);
    if (dr < 0) break;        // ub is the gcd of the primitive parts
    if (dr == 0) {            // coprime in v
      return cont;
    }
    Polynomial cr = content_in(r);
    ua = std::move(ub);
    ub = strip(std::move(r), cr);
  }
  Polynomial pp = from_coeffs(ub, v);
  return (cont * pp).primitive_associate();
}

std::string Polynomial::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    if (first) {
      if (coeff < 0) {
        out << "-";
        coeff = -coeff;
      }
    } else {
      out << (coeff < 0 ? "-" : "+");
      if (coeff < 0) coeff = -coeff;
    }
    if (m.is_unit()) {
      out << rational_to_string(coeff);
    } else if (coeff == 1) {
      out << m.render();
    } else {
      out << rational_to_string(coeff) << "*" << m.render();
    }
    first = false;
  }
  return out.str();
}

}  // namespace okapain::cas
