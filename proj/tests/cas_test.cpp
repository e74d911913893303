#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "okapain/errors.hpp"
#include "okapain/laurent.hpp"
#include "okapain/parser.hpp"
#include "okapain/rational_function.hpp"

using namespace okapain;
using cas::LaurentPolynomial;
using cas::Polynomial;
using cas::Rational;
using cas::RationalFunction;
using cas::Variable;

namespace {

RationalFunction rf(const std::string& s) { return atlas::parse_rational(s); }

// Random small rational functions for the property suites. Denominators are
// built from a fixed pool so inverses and products stay well defined.
struct Gen {
  std::mt19937_64 rng{20240915};

  Rational coeff() {
    std::uniform_int_distribution<long> d(-4, 4);
    return Rational(d(rng));
  }

  Polynomial poly(const std::vector<Variable>& vars, int max_terms = 3, int max_deg = 2) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Polynomial p;
    int k = terms(rng);
    for (int i = 0; i < k; ++i) {
      Polynomial term = Polynomial::constant(coeff());
      for (const auto& v : vars)
        term = term * Polynomial::variable(v).pow(deg(rng));
      p = p + term;
    }
    return p;
  }

  RationalFunction rational(const std::vector<Variable>& vars) {
    Polynomial num = poly(vars);
    Polynomial den;
    while (den.is_zero()) den = poly(vars, 2, 1);
    return RationalFunction::of(num, den);
  }
};

}  // namespace

TEST_CASE("arith examples") {
  Variable x("x"), y("y");
  // (x/y) + (1/y) = (x+1)/y
  CHECK(rf("x/y") + rf("1/y") == rf("(x+1)/y"));
  // (x^2-1)/(x-1) = x+1 by gcd cancellation
  CHECK(rf("(x^2-1)/(x-1)") == rf("x+1"));
  CHECK(rf("x^2-1") / rf("x-1") == rf("x+1"));
  // (a1+y2) * 1/(a1+y2) = 1
  CHECK(rf("(a1+y2)*(1/(a1+y2))").is_one());
  CHECK_THROWS_AS(rf("x") / RationalFunction(), DivisionByZero);
}

TEST_CASE("normal form is canonical") {
  CHECK(rf("(2*x+2)/(2*y)") == rf("(x+1)/y"));
  CHECK(rf("(x+1)/(2*y)").den() == rf("y").num());  // leading coefficient 1
  CHECK(rf("0/x").is_zero());
  CHECK(rf("x-x").is_zero());
}

TEST_CASE("substitute examples") {
  Variable x0("x0"), y0("y0"), x1("x1"), y1("y1");
  // f = x0*y0 under the blow-down x0 = x1^2 y1, y0 = 1/x1 gives x1*y1.
  RationalFunction f = rf("x0*y0");
  std::map<Variable, RationalFunction> bind{{x0, rf("x1^2*y1")}, {y0, rf("1/x1")}};
  CHECK(f.substitute(bind) == rf("x1*y1"));

  // Round trip through the affine-shift pair of charts.
  Variable x2("x2"), y2("y2");
  RationalFunction fwd_x = rf("x2*y2/(a1+y2)");
  RationalFunction fwd_y = rf("a1+y2");
  std::map<Variable, RationalFunction> inv{{x1, fwd_x}, {y1, fwd_y}};
  RationalFunction back_x = rf("x1*y1/(y1-a1)").substitute(inv);
  RationalFunction back_y = rf("y1-a1").substitute(inv);
  CHECK(back_x == rf("x2"));
  CHECK(back_y == rf("y2"));

  // Parameters are fixed by coordinate substitutions.
  CHECK(rf("t").substitute(bind) == rf("t"));

  // Substitution that kills the denominator identically.
  Variable u("u");
  CHECK_THROWS_AS(rf("1/(x0-y0)").substitute(
                      {{x0, rf("u")}, {y0, rf("u")}}),
                  SubstitutionPole);
}

TEST_CASE("differentiate examples") {
  Variable x("x"), y("y"), x2("x2"), y2("y2");
  CHECK(rf("x^2*y").differentiate(x) == rf("2*x*y"));
  CHECK(rf("1/x").differentiate(x) == rf("-1/x^2"));
  // Quotient rule worked by hand: d/dy2 of x2*y2/(a1+y2) = x2*a1/(a1+y2)^2.
  CHECK(rf("x2*y2/(a1+y2)").differentiate(y2) == rf("x2*a1/(a1+y2)^2"));
}

TEST_CASE("evaluate examples") {
  Variable x("x"), y("y"), t("t");
  CHECK(rf("(x+1)/y").evaluate({{x, Rational(1)}, {y, Rational(2)}}) == Rational(1));
  // ((-t)^2-1)^2/(-t)^2 at t = 2 equals 9/4.
  RationalFunction det = rf("((-t)^2-1)^2/(-t)^2");
  CHECK(det.evaluate({{t, Rational(2)}}) == Rational(9, 4));
  CHECK_THROWS_AS(rf("1/(t-t)"), DivisionByZero);
  CHECK_THROWS_AS(rf("t/(t-2)").evaluate({{t, Rational(2)}}), EvaluationPole);
  CHECK_THROWS_AS(rf("x/y").evaluate({{x, Rational(1)}}), UnboundVariable);
}

TEST_CASE("laurent normal form examples") {
  Variable x3("x3"), x2("x2"), x10("x10"), t("t");
  // (1+a1*x3)/x3 = x3^-1 + a1
  LaurentPolynomial l = cas::laurent_normal_form(rf("(1+a1*x3)/x3"), x3, {});
  CHECK(l.coeffs.size() == 2);
  CHECK(l.coeffs.at(-1) == rf("1"));
  CHECK(l.coeffs.at(0) == rf("a1"));

  // (x2-t)^2/x2 = x2 - 2t + t^2 x2^-1
  LaurentPolynomial b = cas::laurent_normal_form(rf("(x2-t)^2/x2"), x2, {});
  CHECK(b.coeffs.at(1) == rf("1"));
  CHECK(b.coeffs.at(0) == rf("-2*t"));
  CHECK(b.coeffs.at(-1) == rf("t^2"));

  // An allowed denominator passes through unexpanded as a degree-0 unit.
  Polynomial unit = rf("1+x10").num();
  LaurentPolynomial u = cas::laurent_normal_form(rf("1/(1+x10)"), x10, {unit});
  CHECK(u.coeffs.size() == 1);
  CHECK(u.coeffs.at(0) == rf("1/(1+x10)"));

  // Without the declaration the same input is rejected.
  CHECK_THROWS_AS(cas::laurent_normal_form(rf("1/(1+x10)"), x10, {}), NotLaurent);
}

TEST_CASE("laurent round trip") {
  Gen gen;
  Variable z("z"), t("t");
  Polynomial unit = rf("t+z").num();
  for (int i = 0; i < 50; ++i) {
    // numerator in z and t over denominator z^k (t+z)^m
    Polynomial num = gen.poly({z, t}, 4, 3);
    if (num.is_zero()) continue;
    std::uniform_int_distribution<int> p(0, 2);
    RationalFunction f = RationalFunction(num) /
                         (RationalFunction::variable(z).pow(p(gen.rng)) *
                          rf("t+z").pow(p(gen.rng)));
    LaurentPolynomial l = cas::laurent_normal_form(f, z, {unit});
    CHECK(l.resum() == f);
  }
}

TEST_CASE("field laws on random rational functions") {
  Gen gen;
  Variable x("x"), t("t");
  std::vector<Variable> vars{x, t};
  for (int i = 0; i < 40; ++i) {
    RationalFunction a = gen.rational(vars);
    RationalFunction b = gen.rational(vars);
    RationalFunction c = gen.rational(vars);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK((a * (RationalFunction::constant(1) / a)).is_one());
  }
}

TEST_CASE("substitution composes") {
  Gen gen;
  Variable x("x"), y("y"), u("u"), v("v");
  for (int i = 0; i < 25; ++i) {
    RationalFunction f = gen.rational({x, y});
    // sigma: x, y in terms of u, v; tau: u, v numeric-ish substitutions
    std::map<Variable, RationalFunction> sigma{{x, gen.rational({u, v})},
                                               {y, gen.rational({u, v})}};
    std::map<Variable, RationalFunction> tau{{u, gen.rational({v})}, {v, rf("v+1")}};
    std::map<Variable, RationalFunction> composed;
    bool defined = true;
    try {
      for (const auto& [k, g] : sigma) composed[k] = g.substitute(tau);
      RationalFunction lhs = f.substitute(sigma).substitute(tau);
      RationalFunction rhs = f.substitute(composed);
      CHECK(lhs == rhs);
    } catch (const EngineError&) {
      defined = false;  // pole met; composition undefined, skip
    }
    (void)defined;
  }
}

TEST_CASE("Leibniz rule") {
  Gen gen;
  Variable x("x"), y("y");
  for (int i = 0; i < 25; ++i) {
    RationalFunction f = gen.rational({x, y});
    RationalFunction g = gen.rational({x, y});
    CHECK((f * g).differentiate(x) == f * g.differentiate(x) + g * f.differentiate(x));
  }
}

TEST_CASE("evaluate is a ring homomorphism") {
  Gen gen;
  Variable x("x"), y("y");
  std::map<Variable, Rational> pt{{x, Rational(3, 2)}, {y, Rational(-5, 3)}};
  for (int i = 0; i < 25; ++i) {
    RationalFunction f = gen.rational({x, y});
    RationalFunction g = gen.rational({x, y});
    try {
      Rational lhs_add = (f + g).evaluate(pt);
      CHECK(lhs_add == f.evaluate(pt) + g.evaluate(pt));
      Rational lhs_mul = (f * g).evaluate(pt);
      CHECK(lhs_mul == f.evaluate(pt) * g.evaluate(pt));
    } catch (const EvaluationPole&) {
      // not a common regular point; skip
    }
  }
}

TEST_CASE("gcd normalization stress") {
  Gen gen;
  Variable x("x"), y("y"), t("t");
  for (int i = 0; i < 30; ++i) {
    Polynomial a = gen.poly({x, y, t});
    Polynomial b = gen.poly({x, y, t}, 2, 2);
    Polynomial c = gen.poly({x, y, t}, 2, 1);
    if (b.is_zero() || c.is_zero()) continue;
    // (a*c)/(b*c) must normalize to the same representation as a/b.
    CHECK(RationalFunction::of(a * c, b * c) == RationalFunction::of(a, b));
  }
}

TEST_CASE("parser errors carry position") {
  try {
    atlas::parse_expression("x1 + ");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column > 1);
  }
  CHECK_THROWS_AS(atlas::parse_expression("(x"), ParseError);
  CHECK_THROWS_AS(atlas::parse_expression("n+1"), ParseError);
  CHECK_THROWS_AS(atlas::parse_expression("x^(n-2)"), ParseError);
}

TEST_CASE("twist exponents instantiate") {
  atlas::Expr e = atlas::parse_expression("-1/((t+x9)^(n-1)*y9^n)");
  CHECK(e.depends_on_twist());
  CHECK(e.instantiate(1) == rf("-1/y9"));
  CHECK(e.instantiate(2) == rf("-1/((t+x9)*y9^2)"));
  atlas::Expr sign = atlas::parse_expression("(-1)^n");
  CHECK(sign.instantiate(2) == rf("1"));
  CHECK(sign.instantiate(3) == rf("-1"));
  // n-1 lands below its floor at n = 0.
  CHECK_THROWS_AS(atlas::parse_expression("x^(n-1)").instantiate(0),
                  NegativeExponentAfterInstantiation);
}

TEST_CASE("expression render parses back") {
  for (const std::string s :
       {"x1*y1/(y1-a1)", "-(t+x10)/y10", "(1-t*y1)^n*y1/(x1^n*y1^n)", "1/y2^(n-1)",
        "x^2-2*t*x+t^2"}) {
    atlas::Expr e = atlas::parse_expression(s);
    atlas::Expr round = atlas::parse_expression(e.render());
    for (int n : {1, 2, 3}) CHECK(e.instantiate(n) == round.instantiate(n));
  }
  // Rendered rational functions re-parse to the same value.
  RationalFunction f = rf("(x^2-1)/(x^3+2*x-7)");
  CHECK(rf(f.render()) == f);
}
